#include "sq3/fockspace.hpp"

#include <cmath>
#include <string>

#include "sq3/errors.hpp"
#include "sq3/format.hpp"
#include "sq3/genmat.hpp"
#include "sq3/kernels.hpp"

namespace sq3 {
namespace {

SparseMatrix op(FockCutoff cutoff, OperatorKind kind, int mode) {
  return build_mode_operator(cutoff, kind, mode).matrix();
}

bool all_zero(std::span<const Complex> v) {
  for (const auto& x : v)
    if (x != Complex{0.0}) return false;
  return true;
}

// exp(n) psi for an operator n that is nilpotent on the truncated space
// (pure raising or pure lowering). The series is summed until a term vanishes
// identically.
std::vector<Complex> nilpotent_exp(const SparseMatrix& n, std::span<const Complex> psi, std::size_t max_terms,
                                   const char* what) {
  std::vector<Complex> sum(psi.begin(), psi.end());
  std::vector<Complex> term(psi.begin(), psi.end());
  std::vector<Complex> next(psi.size());
  for (std::size_t k = 1; k <= max_terms; ++k) {
    n.apply(term, next);
    std::swap(term, next);
    if (all_zero(term)) return sum;
    kernels::scale_accumulate(1.0 / static_cast<double>(k), term, sum);
  }
  throw ResourceError(std::string("apply_s3_normal_ordered: ") + what + " series did not terminate within " +
                      std::to_string(max_terms) + " terms");
}

// :exp(X): psi for X = a^dagger C a with C^2 = g C. Uses
// :X^(k+1): = (X - k g) :X^k:, which follows from moving the annihilators of X
// through :X^k:.
std::vector<Complex> normal_ordered_projector_exp(const SparseMatrix& x, double g, std::span<const Complex> psi,
                                                  std::size_t max_terms) {
  std::vector<Complex> sum(psi.begin(), psi.end());
  std::vector<Complex> term(psi.begin(), psi.end());
  std::vector<Complex> next(psi.size());
  const double psi_norm = std::sqrt(kernels::norm_sq(psi));
  if (psi_norm == 0.0 || g == 0.0) return sum;
  for (std::size_t k = 0; k < max_terms; ++k) {
    x.apply(term, next);
    kernels::axpy(-static_cast<double>(k) * g, term, next);
    std::swap(term, next);
    const double term_norm = std::sqrt(kernels::scale_accumulate(1.0 / static_cast<double>(k + 1), term, sum));
    if (term_norm <= 1e-17 * psi_norm) return sum;
  }
  throw ResourceError("apply_s3_normal_ordered: normally ordered number factor did not converge within " +
                      std::to_string(max_terms) + " terms");
}

}  // namespace

int select_cutoff(double mu, double nu, double eps) {
  const double r = std::hypot(mu, nu);
  if (!std::isfinite(r)) throw InvalidArgument("select_cutoff: couplings must be finite");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("select_cutoff: eps must be in (0, 1)");
  if (r == 0.0) return 1;
  const double t = std::tanh(r);
  const double levels = std::log(eps * (1.0 - t * t)) / (2.0 * std::log(t));
  return std::max(1, static_cast<int>(std::ceil(levels)) - 1);
}

int eigen_relation_cutoff(double mu, double nu, double target) {
  const double r = std::hypot(mu, nu);
  if (r == 0.0) return 1;
  const double t = std::tanh(r);
  const double sech = 1.0 / std::cosh(r);
  for (int n = 1; n < 4096; ++n) {
    const double c_top = sech * std::pow(t, n);
    if (t * std::sqrt(n + 1.0) * c_top <= target) return n;
  }
  throw InvalidArgument("eigen_relation_cutoff: target unreachable");
}

SparseMatrix build_s3_generator(FockCutoff cutoff, double mu, double nu) {
  if (!std::isfinite(mu) || !std::isfinite(nu)) throw InvalidArgument("build_s3_generator: couplings must be finite");
  const auto a1 = op(cutoff, OperatorKind::annihilation, 1);
  const auto a2 = op(cutoff, OperatorKind::annihilation, 2);
  const auto a3 = op(cutoff, OperatorKind::annihilation, 3);
  const auto c1 = op(cutoff, OperatorKind::creation, 1);
  const auto c2 = op(cutoff, OperatorKind::creation, 2);
  const auto c3 = op(cutoff, OperatorKind::creation, 3);
  return Complex{mu} * (a1 * a2 - c1 * c2) + Complex{nu} * (a1 * a3 - c1 * c3);
}

FockState apply_s3_numeric(const FockState& state, double mu, double nu, double tol) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw InvalidArgument("apply_s3_numeric: tol must be in (0, 1e-6]");
  if (std::abs(state.norm_sq() - 1.0) > 1e-6) throw InvalidArgument("apply_s3_numeric: input state is not normalized");
  const auto k = build_s3_generator(state.cutoff(), mu, nu);
  ExpmvOptions opts;
  opts.tol = tol;
  auto result = expmv(k, state.amplitudes(), opts);
  return FockState(state.cutoff(), std::move(result.vec));
}

FockState squeezed_vacuum_analytic(FockCutoff cutoff, double mu, double nu, double max_tail) {
  const auto g = build_generator(mu, nu);
  if (g.r() >= std::atanh(0.999)) throw InvalidArgument("squeezed_vacuum_analytic: r must be below atanh(0.999)");
  const double t = std::tanh(g.r());
  const double sech = 1.0 / std::cosh(g.r());
  const int n_max = cutoff.n_max();

  std::vector<double> cos_pow(n_max + 1, 1.0);
  std::vector<double> sin_pow(n_max + 1, 1.0);
  for (int i = 1; i <= n_max; ++i) {
    cos_pow[i] = cos_pow[i - 1] * g.cos_theta();
    sin_pow[i] = sin_pow[i - 1] * g.sin_theta();
  }

  std::vector<Complex> amp(cutoff.dim(), 0.0);
  std::vector<double> binom{1.0};
  double lead = sech;  // sech r (-tanh r)^n
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      std::vector<double> row(n + 1, 1.0);
      for (int k = 1; k < n; ++k) row[k] = binom[k - 1] + binom[k];
      binom = std::move(row);
      lead *= -t;
    }
    for (int k = 0; k <= n; ++k) {
      amp[cutoff.flat_index(n, n - k, k)] = lead * std::sqrt(binom[k]) * cos_pow[n - k] * sin_pow[k];
    }
  }
  FockState state(cutoff, std::move(amp));
  if (state.tail_mass() > max_tail) {
    const int needed = select_cutoff(mu, nu);
    throw TruncationError("squeezed_vacuum_analytic: tail mass " + format_double(state.tail_mass()) +
                              " exceeds " + format_double(max_tail) + " at cutoff " + std::to_string(n_max),
                          needed);
  }
  return state;
}

double EigenResiduals::max() const noexcept { return std::max({mode1, mode2, mode3}); }

EigenResiduals check_eigen_relations(const FockState& state, double mu, double nu) {
  const auto g = build_generator(mu, nu);
  const auto cutoff = state.cutoff();
  const double t = std::tanh(g.r());
  const double c = g.cos_theta();
  const double s = g.sin_theta();
  const auto a1 = op(cutoff, OperatorKind::annihilation, 1);
  const auto a2 = op(cutoff, OperatorKind::annihilation, 2);
  const auto a3 = op(cutoff, OperatorKind::annihilation, 3);
  const auto c1 = op(cutoff, OperatorKind::creation, 1);
  const auto c2 = op(cutoff, OperatorKind::creation, 2);
  const auto c3 = op(cutoff, OperatorKind::creation, 3);

  const auto residual = [&](const SparseMatrix& m) {
    return std::sqrt(kernels::norm_sq(m.apply(state.amplitudes())));
  };
  EigenResiduals out;
  out.mode1 = residual(a1 + Complex{t * c} * c2 + Complex{t * s} * c3);
  out.mode2 = residual(a2 + Complex{t * c} * c1);
  out.mode3 = residual(a3 + Complex{t * s} * c1);
  out.truncation_bound = t * std::sqrt(cutoff.n_max() + 1.0) * std::sqrt(state.tail_mass());
  return out;
}

FockState apply_s3_normal_ordered(const FockState& state, double mu, double nu, NormalOrderedForm form) {
  const auto g = build_generator(mu, nu);
  const auto cutoff = state.cutoff();
  const double t = std::tanh(g.r());
  const double sech = 1.0 / std::cosh(g.r());
  const double c = g.cos_theta();
  const double s = g.sin_theta();
  const auto a1 = op(cutoff, OperatorKind::annihilation, 1);
  const auto a2 = op(cutoff, OperatorKind::annihilation, 2);
  const auto a3 = op(cutoff, OperatorKind::annihilation, 3);
  const auto c1 = op(cutoff, OperatorKind::creation, 1);
  const auto c2 = op(cutoff, OperatorKind::creation, 2);
  const auto c3 = op(cutoff, OperatorKind::creation, 3);
  const auto n1 = op(cutoff, OperatorKind::number, 1);
  const auto n2 = op(cutoff, OperatorKind::number, 2);
  const auto n3 = op(cutoff, OperatorKind::number, 3);

  const SparseMatrix partner = form == NormalOrderedForm::corrected ? Complex{c} * a2 + Complex{s} * a3
                                                                    : Complex{c} * a2 + Complex{s} * a1;
  const SparseMatrix lowering = Complex{t} * (a1 * partner);
  const SparseMatrix raising = Complex{-t} * (c1 * (Complex{c} * c2 + Complex{s} * c3));
  const double gm = sech - 1.0;
  const SparseMatrix number_form =
      Complex{gm} * (n1 + Complex{c * c} * n2 + Complex{s * s} * n3 + Complex{s * c} * (c3 * a2 + c2 * a3));

  const std::size_t nilpotent_terms = 3 * static_cast<std::size_t>(cutoff.n_max()) + 2;
  const std::size_t series_terms = 64 * nilpotent_terms + 1000;
  auto psi = nilpotent_exp(lowering, state.amplitudes(), nilpotent_terms, "annihilation");
  psi = normal_ordered_projector_exp(number_form, gm, psi, series_terms);
  psi = nilpotent_exp(raising, psi, nilpotent_terms, "creation");
  kernels::scale(sech, psi);
  return FockState(cutoff, std::move(psi));
}

FockState s3_on_coherent(Complex z1, Complex z2, Complex z3, double mu, double nu, FockCutoff cutoff,
                         double max_tail) {
  const auto g = build_generator(mu, nu);
  const double t = std::tanh(g.r());
  const double ch = std::cosh(g.r());
  const double c = g.cos_theta();
  const double s = g.sin_theta();
  const double half_sin2 = s * c;  // sin(2 theta) / 2

  const Complex gamma1 = z1 / ch;
  const Complex gamma2 = (z2 * (s * s * ch + c * c) - z3 * half_sin2 * (ch - 1.0)) / ch;
  const Complex gamma3 = (z3 * (s * s + c * c * ch) - z2 * half_sin2 * (ch - 1.0)) / ch;

  const auto c1 = op(cutoff, OperatorKind::creation, 1);
  const auto c2 = op(cutoff, OperatorKind::creation, 2);
  const auto c3 = op(cutoff, OperatorKind::creation, 3);
  const SparseMatrix pair_creation = Complex{-t} * (c1 * (Complex{c} * c2 + Complex{s} * c3));
  const SparseMatrix displacement = gamma1 * c1 + gamma2 * c2 + gamma3 * c3;

  const std::size_t max_terms = 3 * static_cast<std::size_t>(cutoff.n_max()) + 2;
  auto psi = nilpotent_exp(pair_creation, vacuum(cutoff).amplitudes(), max_terms, "pair creation");
  psi = nilpotent_exp(displacement, psi, max_terms, "displacement");
  const double z_norm = std::norm(z1) + std::norm(z2) + std::norm(z3);
  const Complex prefactor = std::exp(-0.5 * z_norm + t * z1 * (z2 * c + z3 * s)) / ch;
  kernels::scale(prefactor, psi);

  FockState out(cutoff, std::move(psi));
  if (out.tail_mass() > max_tail) {
    throw TruncationError("s3_on_coherent: tail mass " + format_double(out.tail_mass()) + " exceeds " +
                              format_double(max_tail) + " at cutoff " + std::to_string(cutoff.n_max()),
                          cutoff.n_max() + 8);
  }
  return out;
}

}  // namespace sq3
