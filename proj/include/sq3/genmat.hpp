#pragma once

// Quadratic generator of the three-mode squeezer and its exponentials.
//
// Index convention used everywhere in this library: mode k (k = 1, 2, 3)
// maps to row/column k - 1 of every 3x3 matrix.

#include "sq3/matrix.hpp"

namespace sq3 {

/// Symmetric generator matrix
///
///     [ 0  mu nu ]
///     [ mu 0  0  ]
///     [ nu 0  0  ]
///
/// together with its polar parameters r = sqrt(mu^2 + nu^2),
/// cos(theta) = mu / r, sin(theta) = nu / r. For r = 0, theta is 0.
class GeneratorMatrix {
 public:
  double mu() const noexcept { return mu_; }
  double nu() const noexcept { return nu_; }
  const Matrix& lambda() const noexcept { return lambda_; }
  double r() const noexcept { return r_; }
  /// In [0, 2pi).
  double theta() const noexcept { return theta_; }
  double cos_theta() const noexcept { return cos_theta_; }
  double sin_theta() const noexcept { return sin_theta_; }

  /// Generator for (factor * mu, factor * nu): r scales by |factor|, theta is
  /// kept for positive factors.
  GeneratorMatrix scaled(double factor) const;

  friend GeneratorMatrix build_generator(double mu, double nu);

 private:
  GeneratorMatrix() = default;

  double mu_ = 0.0;
  double nu_ = 0.0;
  Matrix lambda_;
  double r_ = 0.0;
  double theta_ = 0.0;
  double cos_theta_ = 1.0;
  double sin_theta_ = 0.0;
};

/// Throws InvalidArgument for non-finite couplings.
GeneratorMatrix build_generator(double mu, double nu);

enum class ExpSign { positive = 1, negative = -1 };

/// e^{+Lambda} or e^{-Lambda} written out entrywise in cosh r, sinh r,
/// cos theta and sin theta.
Matrix exp_closed_form(const GeneratorMatrix& g, ExpSign sign);

/// The pair (e^{-Lambda}, e^{+Lambda}). S3 maps Q -> e^{-Lambda} Q and
/// P -> e^{+Lambda} P under S3^{-1} (.) S3.
struct SymplecticPair {
  Matrix exp_neg;
  Matrix exp_pos;
};

SymplecticPair symplectic_pair(const GeneratorMatrix& g);

/// General dense matrix exponential (n <= 16) by scaling and squaring of a
/// Taylor series. The series order is picked at runtime so the remainder
/// bound of the scaled series stays below 1e-17 relative; independent of the
/// closed form above.
Matrix expm_oracle(const Matrix& m);

enum class BogoliubovDirection {
  forward,  ///< S3 a_k S3^{-1}
  inverse,  ///< S3^{-1} a_k S3
};

/// Row k expresses the transformed a_k as sum_i a_part(k,i) a_i + adag_part(k,i) a_i^dagger.
struct BogoliubovTable {
  Matrix a_part;
  Matrix adag_part;
};

BogoliubovTable bogoliubov_coefficients(const GeneratorMatrix& g, BogoliubovDirection direction);

/// 6x6 block matrix [[A, B], [B, A]] acting on (a, a^dagger); real couplings
/// make the conjugate blocks equal to A and B.
Matrix bogoliubov_block(const BogoliubovTable& t);

}  // namespace sq3
