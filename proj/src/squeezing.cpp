#include "sq3/squeezing.hpp"

#include <cmath>

#include "sq3/errors.hpp"
#include "sq3/format.hpp"
#include "sq3/fockspace.hpp"
#include "sq3/genmat.hpp"
#include "sq3/operators.hpp"

namespace sq3 {
namespace {

QuadratureStats make_stats(double v1, double v2, Pathway p) {
  QuadratureStats s;
  s.var_x1 = v1;
  s.var_x2 = v2;
  s.product = std::sqrt(v1 * v2);
  s.pathway = p;
  return s;
}

}  // namespace

std::string_view pathway_name(Pathway p) noexcept {
  switch (p) {
    case Pathway::closed_form:
      return "closed_form";
    case Pathway::matrix_sum:
      return "matrix_sum";
    case Pathway::fock_numeric:
      return "fock_numeric";
  }
  return "unknown";
}

QuadratureStats variance_closed_form(double mu, double nu) {
  const auto g = build_generator(mu, nu);
  const double c = g.cos_theta();
  const double s = g.sin_theta();
  const double ch2 = std::cosh(2.0 * g.r());
  const double sh2 = std::sinh(2.0 * g.r());
  const double common = (2.0 * ch2 + 1.0) + 2.0 * s * c * (ch2 - 1.0);
  const double cross = 2.0 * (c + s) * sh2;
  return make_stats((common - cross) / 12.0, (common + cross) / 12.0, Pathway::closed_form);
}

QuadratureStats variance_matrix_sum(double mu, double nu) {
  const auto doubled = build_generator(mu, nu).scaled(2.0);
  const auto [exp_neg, exp_pos] = symplectic_pair(doubled);
  return make_stats(exp_neg.sum() / 12.0, exp_pos.sum() / 12.0, Pathway::matrix_sum);
}

QuadratureStats variance_fock(const FockState& state) {
  const double tail = state.tail_mass();
  if (tail > 1e-6) {
    throw PrecisionError("variance_fock: tail mass " + format_double(tail) + " above 1e-6; raise the cutoff");
  }
  const auto cutoff = state.cutoff();
  const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
  const OperatorExpr x1 = inv_sqrt6 * (position_quadrature(cutoff, 1) + position_quadrature(cutoff, 2) +
                                       position_quadrature(cutoff, 3));
  const OperatorExpr x2 = inv_sqrt6 * (momentum_quadrature(cutoff, 1) + momentum_quadrature(cutoff, 2) +
                                       momentum_quadrature(cutoff, 3));
  const double m1 = expectation(state, x1).real();
  const double m2 = expectation(state, x2).real();
  const double sq1 = expectation(state, x1 * x1).real();
  const double sq2 = expectation(state, x2 * x2).real();

  auto stats = make_stats(sq1 - m1 * m1, sq2 - m2 * m2, Pathway::fock_numeric);
  stats.mean_x1 = m1;
  stats.mean_x2 = m2;
  if (tail > 1e-8) stats.warning = "tail mass " + format_double(tail) + " above 1e-8; variances may be inaccurate";
  return stats;
}

double uncertainty_product(double mu, double nu) {
  const auto g = build_generator(mu, nu);
  const double r = g.r();
  const double sin2 = 2.0 * g.sin_theta() * g.cos_theta();
  const double sh = std::sinh(r);
  const double inner = 1.0 - 2.0 * sh * sh * sin2;
  return std::sqrt((4.0 * std::cosh(2.0 * r) + 4.0) + inner * inner) / 12.0;
}

double TwoModeVariances::sd_product() const { return std::sqrt(var_x * var_p); }

TwoModeVariances two_mode_baseline(double lambda) {
  if (!std::isfinite(lambda)) throw InvalidArgument("two_mode_baseline: lambda must be finite");
  return {std::exp(-2.0 * lambda) / 4.0, std::exp(2.0 * lambda) / 4.0};
}

TwoModeVariances two_mode_fock(double lambda, int cutoff_n_max) {
  const FockCutoff cutoff(cutoff_n_max > 0 ? cutoff_n_max : select_cutoff(lambda, 0.0));
  const auto psi = apply_s3_numeric(vacuum(cutoff), lambda, 0.0);
  const OperatorExpr x = 0.5 * (position_quadrature(cutoff, 1) + position_quadrature(cutoff, 2));
  const OperatorExpr p = 0.5 * (momentum_quadrature(cutoff, 1) + momentum_quadrature(cutoff, 2));
  return {expectation(psi, x * x).real(), expectation(psi, p * p).real()};
}

}  // namespace sq3
