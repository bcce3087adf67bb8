#include "sq3/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "sq3/errors.hpp"
#include "sq3/fockspace.hpp"
#include "sq3/format.hpp"
#include "sq3/genmat.hpp"
#include "sq3/selfcheck.hpp"
#include "sq3/squeezing.hpp"
#include "sq3/wigner.hpp"

namespace sq3::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Config {
  double mu = 0.0;
  double nu = 0.0;
  std::optional<int> cutoff;
  std::optional<double> tol;
  std::string out_path;
  std::string format;
  bool verify = false;
  bool json_report = false;
  std::vector<std::string> sweeps;
  std::vector<std::string> fixes;
  std::vector<int> criteria;
  bool mu_given = false;
  bool nu_given = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

void require_finite(const Config& c) {
  if (!std::isfinite(c.mu) || !std::isfinite(c.nu)) throw InvalidArgument("--mu and --nu must be finite");
}

std::string format_or(const Config& c, const std::string& fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "csv" && f != "json") throw InvalidArgument("--format must be csv or json");
  return f;
}

FockCutoff cutoff_for(const Config& c) { return FockCutoff(c.cutoff ? *c.cutoff : select_cutoff(c.mu, c.nu)); }

void cmd_state(const Config& c, std::ostream& out) {
  require_finite(c);
  const auto cut = cutoff_for(c);
  const auto psi = squeezed_vacuum_analytic(cut, c.mu, c.nu);
  std::optional<double> fid;
  if (c.verify) fid = fidelity(psi, apply_s3_numeric(vacuum(cut), c.mu, c.nu, c.tol.value_or(1e-13)));

  if (format_or(c, "json") == "json") {
    auto j = ordered_json::parse(to_json(psi));
    if (fid) {
      j["verify"] = ordered_json{{"backend", "exponential action"}, {"fidelity", *fid}};
    }
    out << j.dump() << '\n';
    return;
  }
  write_csv_row(out, std::vector<std::string>{"n1", "n2", "n3", "re", "im"});
  const auto amps = psi.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto n = cut.multi_index(i);
    write_csv_row(out, std::vector<std::string>{std::to_string(n[0]), std::to_string(n[1]), std::to_string(n[2]),
                                                format_double(amps[i].real()), format_double(amps[i].imag())});
  }
  write_csv_row(out, std::vector<std::string>{"#tail_mass", format_double(psi.tail_mass())});
  if (fid) write_csv_row(out, std::vector<std::string>{"#fidelity", format_double(*fid)});
}

void cmd_variance(const Config& c, std::ostream& out) {
  require_finite(c);
  std::vector<QuadratureStats> rows = {variance_closed_form(c.mu, c.nu), variance_matrix_sum(c.mu, c.nu)};
  if (c.verify) {
    const auto psi = apply_s3_numeric(vacuum(cutoff_for(c)), c.mu, c.nu, c.tol.value_or(1e-13));
    rows.push_back(variance_fock(psi));
  }
  if (format_or(c, "csv") == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& s : rows) {
      ordered_json j{{"pathway", pathway_name(s.pathway)}, {"mu", c.mu},          {"nu", c.nu},
                     {"var_x1", s.var_x1},                 {"var_x2", s.var_x2}, {"sd_product", s.product}};
      if (!s.warning.empty()) j["warning"] = s.warning;
      arr.push_back(j);
    }
    out << arr.dump(2) << '\n';
    return;
  }
  write_csv_row(out, std::vector<std::string>{"pathway", "mu", "nu", "var_x1", "var_x2", "sd_product"});
  for (const auto& s : rows) {
    write_csv_row(out, std::vector<std::string>{std::string(pathway_name(s.pathway)), format_double(c.mu),
                                                format_double(c.nu), format_double(s.var_x1),
                                                format_double(s.var_x2), format_double(s.product)});
  }
}

void cmd_uncertainty(const Config& c, std::ostream& out) {
  require_finite(c);
  const auto g = build_generator(c.mu, c.nu);
  Table t{{"mu", "nu", "r", "theta", "product"}, {{c.mu, c.nu, g.r(), g.theta(), uncertainty_product(c.mu, c.nu)}}};
  if (format_or(c, "csv") == "json") {
    t.write_json(out);
  } else {
    t.write_csv(out);
  }
}

void cmd_wigner(const Config& c, std::ostream& out) {
  require_finite(c);
  GridSpec spec;
  for (const auto& s : c.sweeps) spec.sweeps.push_back(parse_sweep(s));
  if (spec.sweeps.size() > 2) throw InvalidArgument("at most two --sweep axes");
  bool fixed_set[6] = {};
  for (const auto& f : c.fixes) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--fix must look like AXIS=value");
    const auto coord = parse_coord(f.substr(0, eq));
    if (!coord) throw InvalidArgument("unknown axis '" + f.substr(0, eq) + "'");
    const int i = static_cast<int>(*coord);
    if (fixed_set[i]) throw InvalidArgument("axis fixed twice: " + f.substr(0, eq));
    fixed_set[i] = true;
    (i < 3 ? spec.fixed.q[i] : spec.fixed.p[i - 3]) = to_double(f.substr(eq + 1));
  }
  for (const auto& ax : spec.sweeps) {
    if (fixed_set[static_cast<int>(ax.coord)]) throw InvalidArgument("axis both swept and fixed");
  }
  const auto grid = wigner_grid(c.mu, c.nu, spec);

  // columns: swept axes in sweep order, then the fixed ones in q1..p3 order
  std::vector<Coord> order;
  for (const auto& ax : spec.sweeps) order.push_back(ax.coord);
  for (int i = 0; i < 6; ++i) {
    const auto co = static_cast<Coord>(i);
    if (std::find(order.begin(), order.end(), co) == order.end()) order.push_back(co);
  }
  Table t;
  for (auto co : order) t.columns.emplace_back(coord_name(co));
  t.columns.emplace_back("w");
  t.rows.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto pt = grid.point(k);
    std::vector<double> row;
    for (auto co : order) {
      const int i = static_cast<int>(co);
      row.push_back(i < 3 ? pt.q[i] : pt.p[i - 3]);
    }
    row.push_back(grid.values[k]);
    t.rows.push_back(std::move(row));
  }
  if (format_or(c, "csv") == "json") {
    t.write_json(out);
  } else {
    t.write_csv(out);
  }
}

void cmd_table(const Config& c, const Table& t, std::ostream& out) {
  if (format_or(c, "csv") == "json") {
    t.write_json(out);
  } else {
    t.write_csv(out);
  }
}

int cmd_selfcheck(const Config& c, std::ostream& out) {
  SelfcheckOptions opt;
  opt.cutoff = c.cutoff;
  if (c.mu_given || c.nu_given) {
    require_finite(c);
    opt.couplings = std::make_pair(c.mu, c.nu);
  }
  opt.only = c.criteria;
  for (int id : opt.only) {
    if (id < 1 || id > 10) throw InvalidArgument("--criteria entries must be in 1..10");
  }
  const auto results = run_selfcheck(opt);
  const bool ok = all_passed(results);
  if (c.json_report || c.format == "json") {
    ordered_json checks = ordered_json::array();
    for (const auto& r : results) {
      checks.push_back(ordered_json{{"id", r.id},
                                    {"name", r.name},
                                    {"passed", r.passed},
                                    {"metric", r.metric},
                                    {"threshold", r.threshold},
                                    {"detail", r.detail},
                                    {"seconds", r.seconds}});
    }
    out << ordered_json{{"passed", ok}, {"checks", checks}}.dump(2) << '\n';
  } else {
    int n_pass = 0;
    for (const auto& r : results) {
      n_pass += r.passed;
      out << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": metric " << format_double(r.metric)
          << ", threshold " << format_double(r.threshold) << ", " << format_double(std::round(r.seconds * 1000) / 1000)
          << " s\n    " << r.detail << '\n';
    }
    out << "selfcheck: " << n_pass << "/" << results.size() << " passed\n";
  }
  return ok ? kOk : kSelfcheckFailed;
}

}  // namespace

void Table::write_csv(std::ostream& out) const {
  write_csv_row(out, columns);
  for (const auto& row : rows) write_csv_row(out, row);
}

void Table::write_json(std::ostream& out) const {
  ordered_json j{{"columns", columns}, {"rows", rows}};
  out << j.dump(2) << '\n';
}

Table fig1_table() {
  Table t{{"mu", "var_x1_nu0", "var_x2_nu0", "var_x1_nu05", "var_x2_nu05"}, {}};
  for (int i = 0; i <= 100; ++i) {
    const double mu = i / 100.0;
    const auto a = variance_closed_form(mu, 0.0);
    const auto b = variance_closed_form(mu, 0.5);
    t.rows.push_back({mu, a.var_x1, a.var_x2, b.var_x1, b.var_x2});
  }
  return t;
}

Table fig2_table() {
  Table t{{"r", "product_theta_0", "product_theta_pi_8", "product_theta_pi_4", "product_theta_3pi_8",
           "product_theta_pi_2"},
          {}};
  for (int i = 0; i <= 150; ++i) {
    const double r = i / 100.0;
    std::vector<double> row{r};
    for (int k = 0; k <= 4; ++k) {
      const double theta = k * std::numbers::pi / 8.0;
      row.push_back(uncertainty_product(r * std::cos(theta), r * std::sin(theta)));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Table t;
  if (!std::getline(in, line)) throw InvalidArgument("empty CSV");
  t.columns = split(line, ',');
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != t.columns.size()) throw InvalidArgument("CSV row width mismatch");
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(to_double(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"three-mode squeezing toolkit", "sq3"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  auto* mu_opt = app.add_option("--mu", c.mu, "coupling of modes 1-2");
  auto* nu_opt = app.add_option("--nu", c.nu, "coupling of modes 1-3");
  app.add_option("--cutoff", c.cutoff, "per-mode photon cutoff n_max");
  app.add_option("--tol", c.tol, "tolerance of the exponential action");
  app.add_option("--out", c.out_path, "write output to PATH instead of stdout");
  app.add_option("--format", c.format, "csv or json");
  app.add_flag("--verify", c.verify, "cross-check with the numeric backend");
  app.add_option("--sweep", c.sweeps, "AXIS=min:max:count, up to two");
  app.add_option("--fix", c.fixes, "AXIS=value for a non-swept coordinate");
  app.add_flag("--json", c.json_report, "selfcheck: JSON report");
  app.add_option("--criteria", c.criteria, "selfcheck: subset of criteria")->delimiter(',');

  const char* const names[] = {"state", "variance", "uncertainty", "wigner", "fig1", "fig2", "selfcheck"};
  for (const char* n : names) app.add_subcommand(n);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sq3: " << e.what() << '\n';
    return kInvalidArguments;
  }
  c.mu_given = mu_opt->count() > 0;
  c.nu_given = nu_opt->count() > 0;
  const std::string cmd = app.get_subcommands().front()->get_name();

  std::ostringstream buf;
  int code = kOk;
  try {
    if (cmd == "state") {
      cmd_state(c, buf);
    } else if (cmd == "variance") {
      cmd_variance(c, buf);
    } else if (cmd == "uncertainty") {
      cmd_uncertainty(c, buf);
    } else if (cmd == "wigner") {
      cmd_wigner(c, buf);
    } else if (cmd == "fig1") {
      cmd_table(c, fig1_table(), buf);
    } else if (cmd == "fig2") {
      cmd_table(c, fig2_table(), buf);
    } else {
      code = cmd_selfcheck(c, buf);
    }
  } catch (const TruncationError& e) {
    err << "sq3: " << e.what() << "; needs --cutoff " << e.suggested_cutoff() << " or larger\n";
    return kTruncationOrPrecision;
  } catch (const PrecisionError& e) {
    err << "sq3: precision: " << e.what() << '\n';
    return kTruncationOrPrecision;
  } catch (const ResourceError& e) {
    err << "sq3: resource limit: " << e.what() << '\n';
    return kTruncationOrPrecision;
  } catch (const std::invalid_argument& e) {
    err << "sq3: " << e.what() << '\n';
    return kInvalidArguments;
  }

  if (c.out_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) {
      err << "sq3: cannot open " << c.out_path << '\n';
      return kInvalidArguments;
    }
    f << buf.str();
  }
  return code;
}

}  // namespace sq3::cli
