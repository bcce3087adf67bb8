#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sq3::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidArguments = 2,
  kTruncationOrPrecision = 3,
  kSelfcheckFailed = 4,
};

/// Numeric table with a header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
};

/// mu in [0, 1] step 0.01; columns mu, var_x1_nu0, var_x2_nu0, var_x1_nu05, var_x2_nu05.
Table fig1_table();
/// r in [0, 1.5] step 0.01; one product column per theta in {0, pi/8, pi/4, 3pi/8, pi/2}.
Table fig2_table();

/// Parses a CSV emitted by Table::write_csv.
Table parse_csv(const std::string& text);

/// Entry point behind the sq3 executable. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sq3::cli
