#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sq3/cli.hpp"
#include "sq3/squeezing.hpp"

using namespace sq3;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("state: vacuum") {
  const auto r = run({"state", "--mu", "0", "--nu", "0"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["cutoff"] == 1);
  CHECK(j["tail_mass"] == 0.0);
  CHECK(j["amplitudes"][0][0] == 1.0);
  CHECK(j["amplitudes"].size() == 8);
}

TEST_CASE("state: explicit cutoff at theta = 0") {
  const auto r = run({"state", "--mu", "0.6", "--nu", "0", "--cutoff", "24"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const double sech = 1 / std::cosh(0.6), t = std::tanh(0.6);
  for (int n = 0; n <= 24; ++n) {
    const std::size_t idx = (n * 25 + n) * 25;
    CHECK(std::abs(j["amplitudes"][idx][0].get<double>() - sech * std::pow(-t, n)) < 1e-15);
  }
}

TEST_CASE("state: verify reports backend fidelity") {
  const auto r = run({"state", "--mu", "0.6", "--nu", "0.45", "--verify"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["verify"]["fidelity"].get<double>() > 1 - 1e-8);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"cutoff", "ordering", "amplitudes", "tail_mass", "verify"});
}

TEST_CASE("state: truncation exit code names the cutoff") {
  const auto r = run({"state", "--mu", "0.9", "--cutoff", "4"});
  CHECK(r.code == 3);
  CHECK(r.err.find("--cutoff 35") != std::string::npos);
}

TEST_CASE("invalid arguments exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"state", "--bogus"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"state", "--mu", "abc"}).code == 2);
  CHECK(run({"state", "--cutoff", "0"}).code == 2);
  CHECK(run({"state", "--cutoff", "80"}).code == 2);
  CHECK(run({"variance", "--format", "xml"}).code == 2);
  CHECK(run({"state", "--mu", "0.2", "--verify", "--tol", "0.1"}).code == 2);
  CHECK(run({"wigner", "--sweep", "q9=0:1:3"}).code == 2);
  CHECK(run({"wigner", "--sweep", "q1=0:1:3", "--fix", "q1=0.5"}).code == 2);
  CHECK(run({"selfcheck", "--criteria", "12"}).code == 2);
}

TEST_CASE("variance") {
  const auto r = run({"variance", "--mu", "0", "--nu", "0"});
  REQUIRE(r.code == 0);
  const auto t = r.out;
  CHECK(t == "pathway,mu,nu,var_x1,var_x2,sd_product\n"
             "closed_form,0,0,0.25,0.25,0.25\n"
             "matrix_sum,0,0,0.25,0.25,0.25\n");
  const auto v = run({"variance", "--mu", "0.5", "--nu", "0.3", "--verify", "--format", "json"});
  REQUIRE(v.code == 0);
  const auto j = nlohmann::json::parse(v.out);
  REQUIRE(j.size() == 3);
  CHECK(j[2]["pathway"] == "fock_numeric");
  CHECK(std::abs(j[2]["var_x1"].get<double>() - j[0]["var_x1"].get<double>()) < 1e-7);
}

TEST_CASE("uncertainty") {
  const auto r = run({"uncertainty", "--mu", "0.3", "--nu", "0.4"});
  REQUIRE(r.code == 0);
  const auto t = cli::parse_csv(r.out);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.columns.back() == "product");
  const double sh = std::sinh(0.5), s2 = std::sin(2 * std::atan2(0.4, 0.3));
  const double expect = std::sqrt(4 * std::cosh(1.0) + 4 + std::pow(1 - 2 * sh * sh * s2, 2)) / 12;
  CHECK(t.rows[0][4] == doctest::Approx(expect).epsilon(1e-15));
  CHECK(t.rows[0][2] == doctest::Approx(0.5));
}

TEST_CASE("wigner grid CSV") {
  const auto r = run({"wigner", "--mu", "0.5", "--nu", "0.3", "--sweep", "q1=-2:2:41"});
  REQUIRE(r.code == 0);
  const auto t = cli::parse_csv(r.out);
  CHECK(t.columns == std::vector<std::string>{"q1", "q2", "q3", "p1", "p2", "p3", "w"});
  REQUIRE(t.rows.size() == 41);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.rows[i][6] > t.rows[peak][6]) peak = i;
  CHECK(t.rows[peak][0] == 0.0);
  CHECK(t.rows[peak][6] == doctest::Approx(1 / std::pow(std::acos(-1.0), 3)).epsilon(1e-15));

  const auto r2 = run({"wigner", "--mu", "0.2", "--sweep", "p2=-1:1:5", "--sweep", "q3=0:1:3", "--fix", "q1=0.5"});
  REQUIRE(r2.code == 0);
  const auto t2 = cli::parse_csv(r2.out);
  CHECK(t2.columns == std::vector<std::string>{"p2", "q3", "q1", "q2", "p1", "p3", "w"});
  CHECK(t2.rows.size() == 15);
  CHECK(t2.rows[3][2] == 0.5);
}

TEST_CASE("fig1 rows") {
  const auto r = run({"fig1"});
  REQUIRE(r.code == 0);
  const auto t = cli::parse_csv(r.out);
  CHECK(t.columns == std::vector<std::string>{"mu", "var_x1_nu0", "var_x2_nu0", "var_x1_nu05", "var_x2_nu05"});
  REQUIRE(t.rows.size() == 101);
  CHECK(t.rows[0][1] == 0.25);
  CHECK(t.rows[0][2] == 0.25);
  const auto nu05 = variance_closed_form(0.0, 0.5);
  CHECK(t.rows[0][3] == nu05.var_x1);
  CHECK(t.rows[0][4] == nu05.var_x2);
  CHECK(t.rows[100][0] == 1.0);
}

TEST_CASE("fig2 rows") {
  const auto r = run({"fig2"});
  REQUIRE(r.code == 0);
  const auto t = cli::parse_csv(r.out);
  REQUIRE(t.rows.size() == 151);
  REQUIRE(t.columns.size() == 6);
  CHECK(t.columns[0] == "r");
  for (std::size_t k = 1; k < 6; ++k) CHECK(t.rows[0][k] == 0.25);
  for (const auto& row : t.rows)
    for (std::size_t k = 1; k < 6; ++k) CHECK(row[k] >= 0.25);
  CHECK(t.rows[150][0] == 1.5);
}

TEST_CASE("output is deterministic and --out writes the same bytes") {
  const auto a = run({"fig2"});
  const auto b = run({"fig2"});
  CHECK(a.out == b.out);
  CHECK(a.out.find('\r') == std::string::npos);
  const auto path = std::filesystem::temp_directory_path() / "sq3_fig2_test.csv";
  const auto c = run({"fig2", "--out", path.string()});
  REQUIRE(c.code == 0);
  CHECK(c.out.empty());
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("figure JSON") {
  const auto r = run({"fig1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["columns"].size() == 5);
  CHECK(j["rows"].size() == 101);
}

TEST_CASE("selfcheck subset passes") {
  const auto r = run({"selfcheck", "--criteria", "1,5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS [1]") != std::string::npos);
  CHECK(r.out.find("PASS [5]") != std::string::npos);
  CHECK(r.out.find("[2]") == std::string::npos);
}

TEST_CASE("selfcheck with injected cutoff fails with diagnostic") {
  const auto r = run({"selfcheck", "--mu", "0.9", "--nu", "0", "--cutoff", "4", "--criteria", "2,3,9", "--json"});
  CHECK(r.code == 4);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == false);
  REQUIRE(j["checks"].size() == 3);
  for (const auto& c : j["checks"]) {
    CHECK(c["passed"] == false);
    CHECK(c["detail"].get<std::string>().find("truncation") != std::string::npos);
  }
}

TEST_CASE("parse_csv rejects ragged input") {
  CHECK_THROWS(cli::parse_csv("a,b\n1\n"));
  CHECK_THROWS(cli::parse_csv(""));
}
