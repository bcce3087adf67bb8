#pragma once

// Data-parallel inner loops behind the Fock-space backend and the Wigner grid.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active variant is picked once at startup from CPUID and can be
// overridden with select_isa() (tests compare the two).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sq3::kernels {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

bool isa_supported(Isa isa) noexcept;
Isa active_isa() noexcept;
/// Throws InvalidArgument if the ISA is not available on this CPU/build.
void select_isa(Isa isa);
std::string_view isa_name(Isa isa) noexcept;

/// Compressed-sparse-row view with complex values.
struct CsrView {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::span<const std::size_t> row_ptr;
  std::span<const std::uint32_t> col_idx;
  std::span<const Complex> values;
};

/// Six coordinate arrays of equal length (structure of arrays).
struct PhasePoints {
  std::span<const double> q[3];
  std::span<const double> p[3];
  std::size_t size() const noexcept { return q[0].size(); }
};

/// y += alpha * x
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
/// x *= alpha
void scale(Complex alpha, std::span<Complex> x);
double norm_sq(std::span<const Complex> x);
/// sum_i conj(x_i) y_i
Complex dot(std::span<const Complex> x, std::span<const Complex> y);
/// term *= c; y += term; returns ||term||^2 after scaling.
double scale_accumulate(double c, std::span<Complex> term, std::span<Complex> y);
/// y = A x
void csr_matvec(const CsrView& a, std::span<const Complex> x, std::span<Complex> y);
/// out_k = q_k^T qform q_k + p_k^T pform p_k for row-major 3x3 forms.
void gaussian_exponent(const double* qform, const double* pform, const PhasePoints& pts, std::span<double> out);

namespace scalar {
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
void scale(Complex alpha, std::span<Complex> x);
double norm_sq(std::span<const Complex> x);
Complex dot(std::span<const Complex> x, std::span<const Complex> y);
double scale_accumulate(double c, std::span<Complex> term, std::span<Complex> y);
void csr_matvec(const CsrView& a, std::span<const Complex> x, std::span<Complex> y);
void gaussian_exponent(const double* qform, const double* pform, const PhasePoints& pts, std::span<double> out);
}  // namespace scalar

#if defined(SQ3_HAVE_AVX2)
namespace avx2 {
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
void scale(Complex alpha, std::span<Complex> x);
double norm_sq(std::span<const Complex> x);
Complex dot(std::span<const Complex> x, std::span<const Complex> y);
double scale_accumulate(double c, std::span<Complex> term, std::span<Complex> y);
void csr_matvec(const CsrView& a, std::span<const Complex> x, std::span<Complex> y);
void gaussian_exponent(const double* qform, const double* pform, const PhasePoints& pts, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace sq3::kernels
