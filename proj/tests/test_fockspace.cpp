#include <doctest.h>

#include <cmath>

#include "sq3/errors.hpp"
#include "sq3/fockspace.hpp"
#include "sq3/operators.hpp"

using namespace sq3;

TEST_CASE("basis indexing round trip") {
  const FockCutoff cut(5);
  CHECK(cut.dim() == 216);
  CHECK(cut.flat_index(1, 2, 3) == (1 * 6 + 2) * 6 + 3);
  for (std::size_t i = 0; i < cut.dim(); ++i) {
    const auto n = cut.multi_index(i);
    CHECK(cut.flat_index(n[0], n[1], n[2]) == i);
  }
  CHECK_THROWS_AS(FockCutoff(0), InvalidArgument);
  CHECK_THROWS_AS(FockCutoff(64), InvalidArgument);
  CHECK_THROWS_AS(cut.flat_index(6, 0, 0), InvalidArgument);
}

TEST_CASE("state bookkeeping") {
  const FockCutoff cut(3);
  const auto v = vacuum(cut);
  CHECK(v.norm_sq() == 1.0);
  CHECK(v.tail_mass() == 0.0);
  const auto top = basis_state(cut, 0, 3, 0);
  CHECK(top.tail_mass() == 1.0);
  CHECK(fidelity(v, top) == 0.0);
  CHECK_THROWS_AS(FockState(cut, std::vector<Complex>(5)), InvalidArgument);

  const auto coh = coherent_state(FockCutoff(30), {0.3, 0.1}, 0.2, {0.0, -0.4});
  CHECK(coh.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mode operators") {
  const FockCutoff cut(4);
  const auto a2 = build_mode_operator(cut, OperatorKind::annihilation, 2);
  const auto n2 = build_mode_operator(cut, OperatorKind::number, 2);
  const auto psi = basis_state(cut, 1, 3, 2);
  const auto out = OperatorExpr(a2).apply(psi.amplitudes());
  CHECK(std::abs(out[cut.flat_index(1, 2, 2)] - std::sqrt(3.0)) < 1e-15);
  CHECK(expectation(psi, n2).real() == doctest::Approx(3.0));
  // [a, a^dagger] = 1 away from the boundary
  const auto c2 = build_mode_operator(cut, OperatorKind::creation, 2);
  const auto comm = OperatorExpr(a2) * OperatorExpr(c2) - OperatorExpr(c2) * OperatorExpr(a2);
  const auto lowish = basis_state(cut, 2, 1, 0);
  const auto r = comm.apply(lowish.amplitudes());
  CHECK(std::abs(r[cut.flat_index(2, 1, 0)] - 1.0) < 1e-15);
  CHECK_THROWS_AS(build_mode_operator(cut, OperatorKind::number, 4), InvalidArgument);
}

TEST_CASE("auto cutoff") {
  CHECK(select_cutoff(0.0, 0.0) == 1);
  CHECK(select_cutoff(0.3, 0.8) <= 32);
  CHECK(select_cutoff(0.6, 0.45) < select_cutoff(0.3, 0.8));
  const int n = select_cutoff(0.6, 0.45);
  const double t = std::tanh(std::hypot(0.6, 0.45));
  const auto missing = [&](int m) { return std::pow(t, 2.0 * (m + 1)); };
  CHECK(missing(n) <= 1e-10 * (1 - t * t) * 1.0000001);
  CHECK(missing(n - 1) > 1e-10 * (1 - t * t));
}

TEST_CASE("analytic squeezed vacuum at theta = 0") {
  const double r = 0.6;
  const auto psi = squeezed_vacuum_analytic(FockCutoff(24), r, 0.0);
  const double sech = 1.0 / std::cosh(r), t = std::tanh(r);
  for (int n = 0; n <= 24; ++n) CHECK(std::abs(psi.amplitude(n, n, 0) - sech * std::pow(-t, n)) < 1e-15);
  CHECK(psi.amplitude(1, 0, 1) == Complex{0.0});
  CHECK(psi.amplitude(1, 1, 1) == Complex{0.0});
}

TEST_CASE("analytic squeezed vacuum: binomial split between modes 2 and 3") {
  const double mu = 0.3, nu = 0.4;
  const auto psi = squeezed_vacuum_analytic(FockCutoff(30), mu, nu);
  const double r = 0.5, sech = 1.0 / std::cosh(r), t = std::tanh(r), c = 0.6, s = 0.8;
  // n = 3, k = 1: sqrt(C(3,1)) c^2 s
  CHECK(std::abs(psi.amplitude(3, 2, 1) - sech * std::pow(-t, 3) * std::sqrt(3.0) * c * c * s) < 1e-15);
  CHECK(psi.amplitude(3, 2, 2) == Complex{0.0});
}

TEST_CASE("analytic state truncation errors") {
  try {
    (void)squeezed_vacuum_analytic(FockCutoff(4), 0.9, 0.0);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.suggested_cutoff() == select_cutoff(0.9, 0.0));
  }
  CHECK_THROWS_AS(squeezed_vacuum_analytic(FockCutoff(40), 4.0, 0.0), InvalidArgument);
}

TEST_CASE("analytic and numeric backends agree") {
  for (auto [mu, nu] : {std::pair{0.6, 0.0}, std::pair{0.0, 0.6}, std::pair{0.6, 0.45}, std::pair{0.3, 0.8}}) {
    CAPTURE(mu);
    CAPTURE(nu);
    const FockCutoff cut(select_cutoff(mu, nu));
    const auto a = squeezed_vacuum_analytic(cut, mu, nu);
    const auto b = apply_s3_numeric(vacuum(cut), mu, nu);
    CHECK(fidelity(a, b) > 1 - 1e-8);
    // amplitudes near the top shell carry the truncated generator's boundary error
    CHECK(max_abs_diff(a, b) < 1e-5);
  }
}

TEST_CASE("numeric backend input validation") {
  const FockCutoff cut(6);
  CHECK_THROWS_AS(apply_s3_numeric(vacuum(cut), 0.2, 0.1, 1e-3), InvalidArgument);
  CHECK_THROWS_AS(apply_s3_numeric(vacuum(cut), 0.2, 0.1, 0.0), InvalidArgument);
  const FockState unnormalized(cut, std::vector<Complex>(cut.dim(), 0.0));
  CHECK_THROWS_AS(apply_s3_numeric(unnormalized, 0.2, 0.1), InvalidArgument);
}

TEST_CASE("eigen relations hold on the analytic state") {
  for (auto [mu, nu] : {std::pair{0.6, 0.45}, std::pair{0.3, 0.8}}) {
    const int n = eigen_relation_cutoff(mu, nu, 1e-7);
    const auto res = check_eigen_relations(squeezed_vacuum_analytic(FockCutoff(n), mu, nu), mu, nu);
    CHECK(res.max() < 1e-6);
    CHECK(res.mode2 < 1e-14);
    CHECK(res.mode3 < 1e-14);
    CHECK(res.mode1 <= res.truncation_bound * 1.01 + 1e-15);
  }
}

TEST_CASE("eigen relation 1 at the auto cutoff is truncation limited") {
  // the top shell n_max has no partner at n_max + 1, so a1 psi misses t sqrt(n_max+1) c_top
  const int n = select_cutoff(0.3, 0.8);
  const auto res = check_eigen_relations(squeezed_vacuum_analytic(FockCutoff(n), 0.3, 0.8), 0.3, 0.8);
  CHECK(res.mode1 > 1e-6);
  CHECK(res.mode1 <= res.truncation_bound * 1.01);
}

TEST_CASE("normally ordered form matches numeric on low photon inputs") {
  const double mu = 0.4, nu = 0.3;
  const FockCutoff cut(37);
  for (auto n : {std::array{0, 0, 0}, std::array{1, 0, 0}, std::array{0, 1, 1}, std::array{2, 0, 0},
                 std::array{0, 0, 2}}) {
    const auto in = basis_state(cut, n[0], n[1], n[2]);
    CHECK(max_abs_diff(apply_s3_normal_ordered(in, mu, nu), apply_s3_numeric(in, mu, nu)) < 1e-8);
  }
}

TEST_CASE("normally ordered form as printed fails") {
  const FockCutoff cut(20);
  // needs a photon in modes 1 and 3 so the a1 a3 term acts
  const auto in = basis_state(cut, 1, 0, 1);
  const auto numeric = apply_s3_numeric(in, 0.4, 0.3);
  CHECK(max_abs_diff(apply_s3_normal_ordered(in, 0.4, 0.3, NormalOrderedForm::as_printed), numeric) > 1e-3);
}

TEST_CASE("normally ordered form on vacuum equals analytic state") {
  const FockCutoff cut(30);
  const auto a = apply_s3_normal_ordered(vacuum(cut), 0.5, 0.2);
  CHECK(max_abs_diff(a, squeezed_vacuum_analytic(cut, 0.5, 0.2)) < 1e-14);
}

TEST_CASE("coherent input transform") {
  const Complex z1{0.3}, z2{0.2}, z3{0.1};
  const FockCutoff cut(24);
  const auto direct = s3_on_coherent(z1, z2, z3, 0.5, 0.4, cut);
  const auto numeric = apply_s3_numeric(coherent_state(cut, z1, z2, z3), 0.5, 0.4);
  CHECK(fidelity(direct, numeric) > 1 - 1e-7);

  // complex amplitudes too
  const auto d2 = s3_on_coherent({0.1, 0.2}, {-0.2, 0.05}, {0.0, 0.3}, 0.35, -0.2, cut);
  const auto n2 = apply_s3_numeric(coherent_state(cut, {0.1, 0.2}, {-0.2, 0.05}, {0.0, 0.3}), 0.35, -0.2);
  CHECK(fidelity(d2, n2) > 1 - 1e-9);

  CHECK_THROWS_AS(s3_on_coherent(2.0, 2.0, 2.0, 0.9, 0.0, FockCutoff(6)), TruncationError);
}

TEST_CASE("JSON dump layout") {
  const auto j = to_json(vacuum(FockCutoff(1)));
  CHECK(j.find("\"cutoff\":1") != std::string::npos);
  CHECK(j.find("\"ordering\":\"n1-major\"") != std::string::npos);
  CHECK(j.find("\"cutoff\"") < j.find("\"ordering\""));
  CHECK(j.find("\"amplitudes\"") < j.find("\"tail_mass\""));
}

TEST_CASE("generator is anti-Hermitian") {
  const auto k = build_s3_generator(FockCutoff(8), 0.8, 0.5);
  CHECK((k + k.adjoint()).max_abs() < 1e-14);
  CHECK(k.at(0, 0) == Complex{0.0});
  CHECK(build_s3_generator(FockCutoff(3), 0.0, 0.0).nnz() == 0);
}

TEST_CASE("numeric two-mode squeezed vacuum at cutoff 24") {
  const auto psi = apply_s3_numeric(vacuum(FockCutoff(24)), 0.6, 0.0);
  const double sech = 1 / std::cosh(0.6), t = std::tanh(0.6);
  double low = 0.0, all = 0.0;
  for (int n = 0; n <= 24; ++n) {
    const double d = std::abs(psi.amplitude(n, n, 0) - sech * std::pow(-t, n));
    all = std::max(all, d);
    if (n <= 12) low = std::max(low, d);
  }
  CHECK(low < 1e-9);
  // the truncated generator reflects at n = 24, which shows up near the top shell
  CHECK(all < 1e-6);
  CHECK(all > 1e-9);
}

TEST_CASE("literal small cutoffs are truncation limited") {
  const auto in = basis_state(FockCutoff(20), 1, 0, 0);
  const double d20 = max_abs_diff(apply_s3_normal_ordered(in, 0.4, 0.3), apply_s3_numeric(in, 0.4, 0.3));
  CHECK(d20 < 1e-6);
  const auto a = squeezed_vacuum_analytic(FockCutoff(24), 0.6, 0.45);
  CHECK(fidelity(a, apply_s3_numeric(vacuum(FockCutoff(24)), 0.6, 0.45)) > 1 - 1e-8);
  const auto r = check_eigen_relations(a, 0.6, 0.45);
  CHECK(r.mode1 == doctest::Approx(r.truncation_bound).epsilon(1e-3));
  CHECK(r.mode3 < 1e-14);
}
