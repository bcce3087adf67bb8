#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sq3/errors.hpp"
#include "sq3/genmat.hpp"

using namespace sq3;

// Oracle first: expm_oracle against exponentials known in closed form.

TEST_CASE("oracle: diagonal matrix") {
  const Matrix d{{0.5, 0.0, 0.0}, {0.0, -1.25, 0.0}, {0.0, 0.0, 2.0}};
  const Matrix e = expm_oracle(d);
  CHECK(e(0, 0) == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
  CHECK(e(1, 1) == doctest::Approx(std::exp(-1.25)).epsilon(1e-15));
  CHECK(e(2, 2) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(e(0, 1) == 0.0);
}

TEST_CASE("oracle: rotation generator") {
  const double a = 1.7;
  const Matrix e = expm_oracle(Matrix{{0.0, a}, {-a, 0.0}});
  CHECK(std::abs(e(0, 0) - std::cos(a)) < 1e-15);
  CHECK(std::abs(e(0, 1) - std::sin(a)) < 1e-15);
  CHECK(std::abs(e(1, 0) + std::sin(a)) < 1e-15);
}

TEST_CASE("oracle: nilpotent matrix gives a finite series") {
  const Matrix n{{0.0, 1.0, 2.0}, {0.0, 0.0, 3.0}, {0.0, 0.0, 0.0}};
  const Matrix e = expm_oracle(n);
  // I + N + N^2/2, N^2 has a single entry 3 at (0,2)
  CHECK(std::abs(e(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(e(0, 2) - 3.5) < 1e-14);
  CHECK(std::abs(e(1, 2) - 3.0) < 1e-15);
}

TEST_CASE("oracle: hyperbolic 2x2 block") {
  const double r = 2.3;
  const Matrix e = expm_oracle(Matrix{{0.0, r}, {r, 0.0}});
  CHECK(std::abs(e(0, 0) - std::cosh(r)) < 1e-14);
  CHECK(std::abs(e(0, 1) - std::sinh(r)) < 1e-14);
}

TEST_CASE("oracle: input validation") {
  CHECK_THROWS_AS(expm_oracle(Matrix(2, 3)), InvalidArgument);
  CHECK_THROWS_AS(expm_oracle(Matrix(17, 17)), InvalidArgument);
  CHECK_THROWS_AS(expm_oracle(Matrix{{std::nan(""), 0.0}, {0.0, 0.0}}), InvalidArgument);
  CHECK_NOTHROW(expm_oracle(Matrix(16, 16, 0.01)));
}

TEST_CASE("generator polar parameters") {
  const auto g = build_generator(0.3, 0.4);
  CHECK(g.r() == doctest::Approx(0.5));
  CHECK(g.cos_theta() == doctest::Approx(0.6));
  CHECK(g.sin_theta() == doctest::Approx(0.8));
  CHECK(g.lambda()(0, 1) == 0.3);
  CHECK(g.lambda()(2, 0) == 0.4);
  CHECK(g.lambda()(1, 2) == 0.0);

  const auto zero = build_generator(0.0, 0.0);
  CHECK(zero.r() == 0.0);
  CHECK(zero.theta() == 0.0);

  const auto neg = build_generator(-1.0, -1.0);
  CHECK(neg.theta() == doctest::Approx(1.25 * std::numbers::pi));

  const auto twice = g.scaled(2.0);
  CHECK(twice.r() == doctest::Approx(1.0));
  CHECK(twice.theta() == doctest::Approx(g.theta()));

  CHECK_THROWS_AS(build_generator(std::nan(""), 0.0), InvalidArgument);
  CHECK_THROWS_AS(build_generator(0.0, INFINITY), InvalidArgument);
}

TEST_CASE("closed form matches oracle on the 25-point grid") {
  const double axis[] = {-1.5, -0.75, 0.0, 0.75, 1.5};
  for (double mu : axis) {
    for (double nu : axis) {
      const auto g = build_generator(mu, nu);
      CAPTURE(mu);
      CAPTURE(nu);
      CHECK(max_abs_diff(exp_closed_form(g, ExpSign::positive), expm_oracle(g.lambda())) < 1e-12);
      CHECK(max_abs_diff(exp_closed_form(g, ExpSign::negative), expm_oracle(-1.0 * g.lambda())) < 1e-12);
      const auto pair = symplectic_pair(g);
      CHECK(max_abs_diff(pair.exp_pos * pair.exp_neg, Matrix::identity(3)) < 1e-12);
    }
  }
}

TEST_CASE("closed form at r = 0 is the identity") {
  CHECK(max_abs_diff(exp_closed_form(build_generator(0, 0), ExpSign::positive), Matrix::identity(3)) == 0.0);
}

TEST_CASE("closed form is symmetric with unit determinant") {
  const auto g = build_generator(0.9, -0.4);
  const Matrix e = exp_closed_form(g, ExpSign::positive);
  CHECK(max_abs_diff(e, e.transpose()) == 0.0);
  CHECK(determinant3(e) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("Bogoliubov coefficients preserve commutators") {
  for (auto [mu, nu] : {std::pair{0.6, 0.45}, std::pair{0.0, 0.8}, std::pair{-1.2, 0.3}}) {
    const auto g = build_generator(mu, nu);
    for (auto dir : {BogoliubovDirection::forward, BogoliubovDirection::inverse}) {
      const auto t = bogoliubov_coefficients(g, dir);
      const Matrix aat = t.a_part * t.a_part.transpose();
      const Matrix bbt = t.adag_part * t.adag_part.transpose();
      CHECK(max_abs_diff(aat - bbt, Matrix::identity(3)) < 1e-13);
      const Matrix abt = t.a_part * t.adag_part.transpose();
      const Matrix bat = t.adag_part * t.a_part.transpose();
      CHECK((abt - bat).max_abs() < 1e-13);
    }
    const Matrix fwd = bogoliubov_block(bogoliubov_coefficients(g, BogoliubovDirection::forward));
    const Matrix inv = bogoliubov_block(bogoliubov_coefficients(g, BogoliubovDirection::inverse));
    CHECK(max_abs_diff(fwd * inv, Matrix::identity(6)) < 1e-13);
  }
}

TEST_CASE("inverse Bogoliubov table at theta = 0 is the two-mode squeezer") {
  // S^-1 a1 S = cosh r a1 - sinh r a2^dagger for exp[r (a1 a2 - a1^dagger a2^dagger)]
  const double r = 0.7;
  const auto t = bogoliubov_coefficients(build_generator(r, 0.0), BogoliubovDirection::inverse);
  CHECK(t.a_part(0, 0) == doctest::Approx(std::cosh(r)));
  CHECK(t.adag_part(0, 1) == doctest::Approx(-std::sinh(r)));
  CHECK(t.a_part(2, 2) == doctest::Approx(1.0));
  CHECK(t.adag_part(2, 0) == 0.0);
}
