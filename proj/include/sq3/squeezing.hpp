#pragma once

// Variances of the three-mode quadratures
//   X1 = (Q1 + Q2 + Q3)/sqrt 6,  X2 = (P1 + P2 + P3)/sqrt 6
// in the squeezed vacuum, by three independent routes.

#include <string>
#include <string_view>

#include "sq3/fock_basis.hpp"

namespace sq3 {

enum class Pathway { closed_form, matrix_sum, fock_numeric };

std::string_view pathway_name(Pathway p) noexcept;

struct QuadratureStats {
  double var_x1 = 0.0;
  double var_x2 = 0.0;
  /// Standard-deviation product sqrt(var_x1 var_x2); bounded below by 1/4.
  double product = 0.0;
  Pathway pathway = Pathway::closed_form;
  /// Measured <X1>, <X2>; zero for the analytic pathways.
  double mean_x1 = 0.0;
  double mean_x2 = 0.0;
  /// Non-empty when the input state's tail mass is above 1e-8.
  std::string warning;
};

/// (1/12)[(2 cosh 2r + 1) + sin 2t (cosh 2r - 1) -/+ 2 (cos t + sin t) sinh 2r],
/// minus for X1 and plus for X2.
QuadratureStats variance_closed_form(double mu, double nu);

/// var_x1 = (1/12) sum_ij (e^{-2L})_ij, var_x2 = (1/12) sum_ij (e^{2L})_ij
/// with e^{+-2L} the closed-form exponentials at (2 mu, 2 nu).
QuadratureStats variance_matrix_sum(double mu, double nu);

/// <X^2> - <X>^2 from mode operators on a truncated state. Throws
/// PrecisionError for tail_mass > 1e-6.
QuadratureStats variance_fock(const FockState& state);

/// (1/12) sqrt((4 cosh 2r + 4) + (1 - 2 sinh^2 r sin 2t)^2)
double uncertainty_product(double mu, double nu);

/// Two-mode quadratures X = (Q1 + Q2)/2, P = (P1 + P2)/2 under
/// exp[lambda (a1 a2 - a1^dagger a2^dagger)].
struct TwoModeVariances {
  double var_x = 0.0;
  double var_p = 0.0;

  double sd_product() const;
};

/// (e^{-2 lambda}/4, e^{2 lambda}/4)
TwoModeVariances two_mode_baseline(double lambda);

/// <X^2>, <P^2> measured on exp(K)|000> at (mu = lambda, nu = 0), using only
/// modes 1 and 2. Cutoff is auto-selected when cutoff_n_max <= 0.
TwoModeVariances two_mode_fock(double lambda, int cutoff_n_max = 0);

}  // namespace sq3
