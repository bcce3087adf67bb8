#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sq3 {

using Complex = std::complex<double>;

/// Per-mode photon cutoff for the three-mode truncated Fock space.
///
/// Basis states |n1, n2, n3> with 0 <= n_i <= n_max are flattened with n1
/// slowest-varying: index = (n1 * d + n2) * d + n3, d = n_max + 1.
class FockCutoff {
 public:
  static constexpr std::size_t kDefaultDimBudget = 64 * 64 * 64;

  /// Throws InvalidArgument for n_max < 1 or d^3 above the budget.
  explicit FockCutoff(int n_max, std::size_t dim_budget = kDefaultDimBudget);

  int n_max() const noexcept { return n_max_; }
  std::size_t local_dim() const noexcept { return static_cast<std::size_t>(n_max_) + 1; }
  std::size_t dim() const noexcept { return local_dim() * local_dim() * local_dim(); }

  std::size_t flat_index(int n1, int n2, int n3) const;
  std::array<int, 3> multi_index(std::size_t flat) const;

  friend bool operator==(const FockCutoff&, const FockCutoff&) = default;

 private:
  int n_max_;
};

/// Immutable pure state on a truncated three-mode Fock space.
class FockState {
 public:
  /// Throws InvalidArgument if amplitudes.size() != cutoff.dim().
  FockState(FockCutoff cutoff, std::vector<Complex> amplitudes);

  const FockCutoff& cutoff() const noexcept { return cutoff_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(int n1, int n2, int n3) const { return amplitudes_[cutoff_.flat_index(n1, n2, n3)]; }

  double norm_sq() const noexcept { return norm_sq_; }
  /// Probability on basis states with any n_i == n_max.
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  FockCutoff cutoff_;
  std::vector<Complex> amplitudes_;
  double norm_sq_ = 0.0;
  double tail_mass_ = 0.0;
};

FockState vacuum(FockCutoff cutoff);
FockState basis_state(FockCutoff cutoff, int n1, int n2, int n3);
/// Product coherent state exp(-|z|^2/2 + z a^dagger)|0> per mode, truncated
/// (not renormalized).
FockState coherent_state(FockCutoff cutoff, Complex z1, Complex z2, Complex z3);

/// <a|b>
Complex overlap(const FockState& a, const FockState& b);
/// |<a|b>|^2 on the raw truncated vectors. Truncation loss lowers the value.
double fidelity(const FockState& a, const FockState& b);
/// Max-abs amplitude difference.
double max_abs_diff(const FockState& a, const FockState& b);

/// {"cutoff": n_max, "ordering": "n1-major", "amplitudes": [[re, im], ...], "tail_mass": x}
std::string to_json(const FockState& state, int indent = -1);

}  // namespace sq3
