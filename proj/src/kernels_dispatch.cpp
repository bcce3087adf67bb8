#include <atomic>

#include "sq3/errors.hpp"
#include "sq3/kernels.hpp"

namespace sq3::kernels {
namespace {

struct Table {
  Isa isa;
  void (*axpy)(Complex, std::span<const Complex>, std::span<Complex>);
  void (*scale)(Complex, std::span<Complex>);
  double (*norm_sq)(std::span<const Complex>);
  Complex (*dot)(std::span<const Complex>, std::span<const Complex>);
  double (*scale_accumulate)(double, std::span<Complex>, std::span<Complex>);
  void (*csr_matvec)(const CsrView&, std::span<const Complex>, std::span<Complex>);
  void (*gaussian_exponent)(const double*, const double*, const PhasePoints&, std::span<double>);
};

constexpr Table kScalarTable{
    Isa::scalar,           scalar::axpy,       scalar::scale,
    scalar::norm_sq,       scalar::dot,        scalar::scale_accumulate,
    scalar::csr_matvec,    scalar::gaussian_exponent,
};

#if defined(SQ3_HAVE_AVX2)
constexpr Table kAvx2Table{
    Isa::avx2,           avx2::axpy,       avx2::scale,
    avx2::norm_sq,       avx2::dot,        avx2::scale_accumulate,
    avx2::csr_matvec,    avx2::gaussian_exponent,
};
#endif

bool cpu_has_avx2() noexcept {
#if defined(SQ3_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* detect() noexcept {
#if defined(SQ3_HAVE_AVX2)
  if (cpu_has_avx2()) return &kAvx2Table;
#endif
  return &kScalarTable;
}

std::atomic<const Table*>& active() {
  static std::atomic<const Table*> table{detect()};
  return table;
}

const Table& t() { return *active().load(std::memory_order_relaxed); }

}  // namespace

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() noexcept { return t().isa; }

void select_isa(Isa isa) {
  if (!isa_supported(isa)) throw InvalidArgument("select_isa: " + std::string(isa_name(isa)) + " is not available");
#if defined(SQ3_HAVE_AVX2)
  if (isa == Isa::avx2) {
    active().store(&kAvx2Table);
    return;
  }
#endif
  active().store(&kScalarTable);
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  if (x.size() != y.size()) throw InvalidArgument("axpy: size mismatch");
  t().axpy(alpha, x, y);
}

void scale(Complex alpha, std::span<Complex> x) { t().scale(alpha, x); }

double norm_sq(std::span<const Complex> x) { return t().norm_sq(x); }

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw InvalidArgument("dot: size mismatch");
  return t().dot(x, y);
}

double scale_accumulate(double c, std::span<Complex> term, std::span<Complex> y) {
  if (term.size() != y.size()) throw InvalidArgument("scale_accumulate: size mismatch");
  return t().scale_accumulate(c, term, y);
}

void csr_matvec(const CsrView& a, std::span<const Complex> x, std::span<Complex> y) {
  if (x.size() != a.cols || y.size() != a.rows) throw InvalidArgument("csr_matvec: dimension mismatch");
  t().csr_matvec(a, x, y);
}

void gaussian_exponent(const double* qform, const double* pform, const PhasePoints& pts, std::span<double> out) {
  const std::size_t n = pts.size();
  for (int i = 0; i < 3; ++i) {
    if (pts.q[i].size() != n || pts.p[i].size() != n) throw InvalidArgument("gaussian_exponent: ragged coordinates");
  }
  if (out.size() != n) throw InvalidArgument("gaussian_exponent: output size mismatch");
  t().gaussian_exponent(qform, pform, pts, out);
}

}  // namespace sq3::kernels
