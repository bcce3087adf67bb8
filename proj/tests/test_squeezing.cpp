#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sq3/errors.hpp"
#include "sq3/fockspace.hpp"
#include "sq3/squeezing.hpp"

using namespace sq3;

TEST_CASE("vacuum variances") {
  for (const auto& s : {variance_closed_form(0, 0), variance_matrix_sum(0, 0)}) {
    CHECK(std::abs(s.var_x1 - 0.25) < 1e-15);
    CHECK(std::abs(s.var_x2 - 0.25) < 1e-15);
    CHECK(std::abs(s.product - 0.25) < 1e-15);
  }
  const auto f = variance_fock(vacuum(FockCutoff(2)));
  CHECK(std::abs(f.var_x1 - 0.25) < 1e-15);
  CHECK(f.pathway == Pathway::fock_numeric);
}

TEST_CASE("theta = 0 value of the anti-squeezed quadrature") {
  for (double r : {0.3, 0.8}) {
    const auto s = variance_closed_form(r, 0.0);
    const double expect = (2 * std::cosh(2 * r) + 1 + 2 * std::sinh(2 * r)) / 12.0;
    CHECK(s.var_x2 == doctest::Approx(expect).epsilon(1e-14));
    CHECK(s.var_x1 == doctest::Approx((2 * std::cosh(2 * r) + 1 - 2 * std::sinh(2 * r)) / 12.0).epsilon(1e-14));
  }
}

TEST_CASE("three pathways agree on the grid") {
  for (int i = 0; i <= 5; ++i) {
    for (int j = 0; j <= 2; ++j) {
      const double mu = 0.2 * i, nu = 0.25 * j;
      CAPTURE(mu);
      CAPTURE(nu);
      const auto a = variance_closed_form(mu, nu);
      const auto b = variance_matrix_sum(mu, nu);
      CHECK(std::abs(a.var_x1 - b.var_x1) < 1e-13);
      CHECK(std::abs(a.var_x2 - b.var_x2) < 1e-13);
      if ((i + j) % 3 == 0) {
        const auto c = variance_fock(squeezed_vacuum_analytic(FockCutoff(select_cutoff(mu, nu)), mu, nu));
        CHECK(std::abs(a.var_x1 - c.var_x1) < 1e-7);
        CHECK(std::abs(a.var_x2 - c.var_x2) < 1e-7);
        CHECK(std::abs(c.mean_x1) < 1e-14);
      }
    }
  }
}

TEST_CASE("variance_fock rejects heavily truncated states") {
  const FockCutoff cut(3);
  CHECK_THROWS_AS(variance_fock(basis_state(cut, 3, 0, 0)), PrecisionError);
  const auto psi = squeezed_vacuum_analytic(FockCutoff(12), 0.6, 0.0, 1e-6);
  CHECK(psi.tail_mass() > 1e-8);
  CHECK_FALSE(variance_fock(psi).warning.empty());
}

TEST_CASE("uncertainty product formula") {
  const double r = 0.5, theta = std::atan2(0.4, 0.3);
  const double sh = std::sinh(r);
  const double expect =
      std::sqrt((4 * std::cosh(2 * r) + 4) + std::pow(1 - 2 * sh * sh * std::sin(2 * theta), 2)) / 12.0;
  CHECK(uncertainty_product(0.3, 0.4) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(uncertainty_product(0, 0) == 0.25);
  const auto s = variance_closed_form(0.3, 0.4);
  CHECK(std::sqrt(s.var_x1 * s.var_x2) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("uncertainty bound holds and is strict for r > 0") {
  for (int i = 1; i <= 150; ++i) {
    for (int k = 0; k <= 16; ++k) {
      const double r = i / 100.0, th = k * std::numbers::pi / 8;
      CHECK(uncertainty_product(r * std::cos(th), r * std::sin(th)) > 0.25);
    }
  }
}

TEST_CASE("theta = pi/4 is the minimum over theta only for small r") {
  const auto at = [](double r, double th) { return uncertainty_product(r * std::cos(th), r * std::sin(th)); };
  const double pi = std::numbers::pi;
  CHECK(at(0.5, pi / 4) < at(0.5, pi / 8));
  CHECK(at(0.5, pi / 4) < at(0.5, 0.0));
  // once 2 sinh^2 r > 1 the squared term grows again near pi/4
  CHECK(at(1.0, pi / 4) > at(1.0, pi / 8));
}

TEST_CASE("squeezed quadrature decreases with mu at nu = 0") {
  double prev = variance_closed_form(0, 0).var_x1;
  for (int i = 1; i <= 100; ++i) {
    const auto s = variance_closed_form(i / 100.0, 0.0);
    CHECK(s.var_x1 < prev);
    prev = s.var_x1;
  }
}

TEST_CASE("two-mode reduction") {
  for (double lambda : {0.3, 0.8}) {
    const auto base = two_mode_baseline(lambda);
    CHECK(base.var_x == doctest::Approx(std::exp(-2 * lambda) / 4));
    CHECK(base.sd_product() == doctest::Approx(0.25));
    const auto got = two_mode_fock(lambda);
    CHECK(std::abs(got.var_x - base.var_x) < 1e-8);
    CHECK(std::abs(got.var_p - base.var_p) < 1e-8);
  }
  const auto psi = apply_s3_numeric(vacuum(FockCutoff(20)), 0.5, 0.0);
  const auto cut = psi.cutoff();
  for (std::size_t i = 0; i < cut.dim(); ++i) {
    if (cut.multi_index(i)[2] > 0) CHECK(psi.amplitudes()[i] == Complex{0.0});
  }
}

TEST_CASE("pathway names") {
  CHECK(pathway_name(Pathway::closed_form) == "closed_form");
  CHECK(pathway_name(Pathway::matrix_sum) == "matrix_sum");
  CHECK(pathway_name(Pathway::fock_numeric) == "fock_numeric");
}
