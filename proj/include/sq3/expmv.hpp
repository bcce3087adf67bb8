#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sq3/sparse.hpp"

namespace sq3 {

struct ExpmvOptions {
  /// Bound on the accumulated Taylor remainder, relative to ||v||.
  double tol = 1e-13;
  /// Norm of one substep operator; larger means fewer substeps and longer series.
  double substep_norm = 4.0;
  std::size_t max_matvecs = 400000;
};

struct ExpmvResult {
  std::vector<Complex> vec;
  std::size_t matvecs = 0;
  std::size_t substeps = 0;
  /// Sum of the per-substep remainder bounds, relative to ||v||.
  double error_bound = 0.0;
};

/// exp(A) v by Taylor series with scaling, never forming exp(A).
///
/// A is split into s substeps with ||A||/s <= substep_norm, where ||A|| is
/// bounded by sqrt(||A||_1 ||A||_inf). Each substep sums the series until the
/// geometric tail bound ||term_k|| q / (1 - q), q = ||A/s|| / (k + 1), falls
/// below tol / s. Throws ResourceError when max_matvecs would be exceeded.
ExpmvResult expmv(const SparseMatrix& a, std::span<const Complex> v, const ExpmvOptions& options = {});

}  // namespace sq3
