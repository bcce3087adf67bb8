#pragma once

// The three-mode squeezer S3 = exp(K),
//   K = mu (a1 a2 - a1^dagger a2^dagger) + nu (a1 a3 - a1^dagger a3^dagger),
// on the truncated Fock space: numerically exact application, the closed-form
// squeezed vacuum, its normally ordered factorization, and the action on
// coherent states.

#include "sq3/expmv.hpp"
#include "sq3/fock_basis.hpp"
#include "sq3/operators.hpp"
#include "sq3/sparse.hpp"

namespace sq3 {

/// Missing-probability target for automatic cutoff selection.
inline constexpr double kDefaultTruncationEps = 1e-10;
/// Largest boundary-shell probability accepted for an analytic state.
inline constexpr double kDefaultMaxTailMass = 1e-8;

/// Smallest n_max whose retained levels 0..n_max satisfy
/// tanh(r)^(2(n_max+1)) <= eps (1 - tanh^2 r), i.e. the photon-number series
/// of the squeezed vacuum loses less than eps. Returns 1 for r = 0.
int select_cutoff(double mu, double nu, double eps = kDefaultTruncationEps);

/// Smallest n_max for which the truncation residual bound of
/// check_eigen_relations, tanh r sqrt(n_max+1) |c_top|, is at most target.
int eigen_relation_cutoff(double mu, double nu, double target);

SparseMatrix build_s3_generator(FockCutoff cutoff, double mu, double nu);

/// exp(K) |state> by exponential action. tol in (0, 1e-6].
FockState apply_s3_numeric(const FockState& state, double mu, double nu, double tol = 1e-13);

/// Closed-form squeezed vacuum
///   S3|000> = sech r exp[-tanh r a1^dagger (cos t a2^dagger + sin t a3^dagger)] |000>
/// with amplitudes sech r (-tanh r)^n sqrt(C(n,k)) cos^(n-k) t sin^k t at
/// (n, n-k, k). Raw truncation, no renormalization. Throws InvalidArgument for
/// r >= atanh(0.999) and TruncationError when tail_mass exceeds max_tail.
FockState squeezed_vacuum_analytic(FockCutoff cutoff, double mu, double nu, double max_tail = kDefaultMaxTailMass);

struct EigenResiduals {
  /// || (a1 + tanh r (cos t a2^dagger + sin t a3^dagger)) psi ||
  double mode1 = 0.0;
  /// || (a2 + tanh r cos t a1^dagger) psi ||
  double mode2 = 0.0;
  /// || (a3 + tanh r sin t a1^dagger) psi ||
  double mode3 = 0.0;
  /// tanh r sqrt(n_max + 1) sqrt(tail_mass): what truncation alone can leave.
  double truncation_bound = 0.0;

  double max() const noexcept;
};

EigenResiduals check_eigen_relations(const FockState& state, double mu, double nu);

enum class NormalOrderedForm {
  corrected,   ///< last factor exp[tanh r a1 (a2 cos t + a3 sin t)]
  as_printed,  ///< last factor exp[tanh r a1 (a2 cos t + a1 sin t)], kept for regression tests
};

/// S3 as the normally ordered product
///   sech r exp[-tanh r a1^dagger b^dagger] :exp[(sech r - 1)(n1 + b^dagger b)]: exp[tanh r a1 b],
/// b = cos t a2 + sin t a3, applied right to left. Throws ResourceError if a
/// series fails to terminate.
FockState apply_s3_normal_ordered(const FockState& state, double mu, double nu,
                                  NormalOrderedForm form = NormalOrderedForm::corrected);

/// S3 |z1 z2 z3> built directly as
///   sech r exp(-|z|^2/2 + tanh r z1 (z2 cos t + z3 sin t))
///   exp(gamma . a^dagger) exp[-tanh r a1^dagger b^dagger] |000>.
/// Throws TruncationError if the result's tail_mass exceeds max_tail.
FockState s3_on_coherent(Complex z1, Complex z2, Complex z3, double mu, double nu, FockCutoff cutoff,
                         double max_tail = kDefaultMaxTailMass);

}  // namespace sq3
