#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sq3 {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Worst observed value of the checked quantity (difference, residual, ...).
  double metric = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct SelfcheckOptions {
  /// Forces n_max for the truncation-sensitive checks (2, 3, 9).
  std::optional<int> cutoff;
  /// Replaces the coupling set of the state checks (2, 3).
  std::optional<std::pair<double, double>> couplings;
  /// Subset of criteria 1..10 to run; empty means all.
  std::vector<int> only;
};

/// Cross-backend acceptance checks 1..10 at desk scale. Exceptions inside a
/// check are reported as a failure with the message as detail.
std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace sq3
