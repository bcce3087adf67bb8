#include "sq3/genmat.hpp"

#include <cmath>
#include <numbers>

#include "sq3/errors.hpp"

namespace sq3 {

GeneratorMatrix build_generator(double mu, double nu) {
  if (!std::isfinite(mu) || !std::isfinite(nu)) {
    throw InvalidArgument("build_generator: couplings must be finite");
  }
  GeneratorMatrix g;
  g.mu_ = mu;
  g.nu_ = nu;
  g.lambda_ = Matrix{{0.0, mu, nu}, {mu, 0.0, 0.0}, {nu, 0.0, 0.0}};
  g.r_ = std::hypot(mu, nu);
  if (g.r_ > 0.0) {
    g.cos_theta_ = mu / g.r_;
    g.sin_theta_ = nu / g.r_;
    double theta = std::atan2(nu, mu);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    g.theta_ = theta;
  }
  return g;
}

GeneratorMatrix GeneratorMatrix::scaled(double factor) const { return build_generator(factor * mu_, factor * nu_); }

Matrix exp_closed_form(const GeneratorMatrix& g, ExpSign sign) {
  const double ch = std::cosh(g.r());
  const double sh = std::sinh(g.r()) * static_cast<double>(static_cast<int>(sign));
  const double c = g.cos_theta();
  const double s = g.sin_theta();
  // sin(2 theta) / 2 (cosh r - 1), written without the double angle.
  const double off = s * c * (ch - 1.0);
  return Matrix{
      {ch, c * sh, s * sh},
      {c * sh, s * s + c * c * ch, off},
      {s * sh, off, s * s * ch + c * c},
  };
}

SymplecticPair symplectic_pair(const GeneratorMatrix& g) {
  return {exp_closed_form(g, ExpSign::negative), exp_closed_form(g, ExpSign::positive)};
}

Matrix expm_oracle(const Matrix& m) {
  if (!m.is_square() || m.rows() == 0) throw InvalidArgument("expm_oracle: matrix must be square and non-empty");
  if (m.rows() > 16) throw InvalidArgument("expm_oracle: dimension above 16");
  if (!m.all_finite()) throw InvalidArgument("expm_oracle: non-finite entry");

  const std::size_t n = m.rows();
  const double norm = m.norm1();
  int squarings = 0;
  double scaled_norm = norm;
  while (scaled_norm > 0.5) {
    scaled_norm *= 0.5;
    ++squarings;
  }
  const Matrix b = m * std::ldexp(1.0, -squarings);

  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  constexpr double kRelativeRemainder = 1e-17;
  constexpr int kMaxOrder = 64;
  for (int k = 1; k <= kMaxOrder; ++k) {
    term = term * b;
    term *= 1.0 / k;
    sum += term;
    // ||sum_{j>k} B^j / j!|| <= ||term_k|| * q / (1 - q), q = ||B|| / (k + 1).
    const double q = scaled_norm / (k + 1);
    if (q < 1.0 && term.norm1() * q / (1.0 - q) <= kRelativeRemainder * sum.norm1()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

BogoliubovTable bogoliubov_coefficients(const GeneratorMatrix& g, BogoliubovDirection direction) {
  // a = (Q + iP)/sqrt 2 with Q -> e^{-L} Q, P -> e^{L} P under S3^{-1}(.)S3 gives
  // a -> cosh(L) a - sinh(L) a^dagger; the forward map is the same with L -> -L.
  const auto [exp_neg, exp_pos] = symplectic_pair(g);
  Matrix a_part = 0.5 * (exp_neg + exp_pos);
  Matrix adag_part = 0.5 * (exp_neg - exp_pos);
  if (direction == BogoliubovDirection::forward) adag_part *= -1.0;
  return {std::move(a_part), std::move(adag_part)};
}

Matrix bogoliubov_block(const BogoliubovTable& t) {
  Matrix m(6, 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      m(i, j) = t.a_part(i, j);
      m(i, j + 3) = t.adag_part(i, j);
      m(i + 3, j) = t.adag_part(i, j);
      m(i + 3, j + 3) = t.a_part(i, j);
    }
  return m;
}

}  // namespace sq3
