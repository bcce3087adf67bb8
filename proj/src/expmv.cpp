#include "sq3/expmv.hpp"

#include <cmath>
#include <string>

#include "sq3/errors.hpp"
#include "sq3/format.hpp"
#include "sq3/kernels.hpp"

namespace sq3 {

ExpmvResult expmv(const SparseMatrix& a, std::span<const Complex> v, const ExpmvOptions& options) {
  if (a.rows() != a.cols() || a.cols() != v.size()) throw InvalidArgument("expmv: dimension mismatch");
  if (!(options.tol > 0.0) || !(options.substep_norm > 0.0)) throw InvalidArgument("expmv: bad options");

  ExpmvResult result;
  result.vec.assign(v.begin(), v.end());
  const double norm_bound = std::sqrt(a.norm1() * a.norm_inf());
  const double v_norm = std::sqrt(kernels::norm_sq(v));
  if (norm_bound == 0.0 || v_norm == 0.0) return result;

  const auto substeps = static_cast<std::size_t>(std::ceil(norm_bound / options.substep_norm));
  const double h = 1.0 / static_cast<double>(substeps);
  const double step_norm = norm_bound * h;
  const double local_tol = options.tol / static_cast<double>(substeps);
  constexpr int kMaxOrder = 200;

  std::vector<Complex> term(v.size());
  std::vector<Complex> next(v.size());
  std::vector<Complex> sum(v.size());
  for (std::size_t step = 0; step < substeps; ++step) {
    term = result.vec;
    sum = result.vec;
    const double w_norm = std::sqrt(kernels::norm_sq(result.vec));
    bool converged = false;
    for (int k = 1; k <= kMaxOrder; ++k) {
      if (++result.matvecs > options.max_matvecs) {
        throw ResourceError("expmv: matvec budget of " + std::to_string(options.max_matvecs) +
                            " exhausted at substep " + std::to_string(step) + " of " + std::to_string(substeps) +
                            " (operator norm bound " + format_double(norm_bound) + ")");
      }
      a.apply(term, next);
      std::swap(term, next);
      const double term_norm = std::sqrt(kernels::scale_accumulate(h / k, term, sum));
      const double q = step_norm / (k + 1);
      if (q < 1.0) {
        const double remainder = term_norm * q / (1.0 - q);
        if (remainder <= local_tol * w_norm) {
          result.error_bound += remainder / v_norm;
          converged = true;
          break;
        }
      }
    }
    if (!converged) throw ResourceError("expmv: Taylor series did not converge within " + std::to_string(kMaxOrder) + " terms");
    std::swap(result.vec, sum);
  }
  result.substeps = substeps;
  return result;
}

}  // namespace sq3
