#include "sq3/fock_basis.hpp"

#include <cmath>
#include <json.hpp>

#include "sq3/errors.hpp"
#include "sq3/kernels.hpp"

namespace sq3 {

FockCutoff::FockCutoff(int n_max, std::size_t dim_budget) : n_max_(n_max) {
  if (n_max < 1) throw InvalidArgument("FockCutoff: n_max must be >= 1");
  if (dim() > dim_budget) {
    throw InvalidArgument("FockCutoff: dimension " + std::to_string(dim()) + " exceeds budget " +
                          std::to_string(dim_budget));
  }
}

std::size_t FockCutoff::flat_index(int n1, int n2, int n3) const {
  if (n1 < 0 || n2 < 0 || n3 < 0 || n1 > n_max_ || n2 > n_max_ || n3 > n_max_) {
    throw InvalidArgument("FockCutoff: occupation outside cutoff");
  }
  const std::size_t d = local_dim();
  return (static_cast<std::size_t>(n1) * d + static_cast<std::size_t>(n2)) * d + static_cast<std::size_t>(n3);
}

std::array<int, 3> FockCutoff::multi_index(std::size_t flat) const {
  const std::size_t d = local_dim();
  return {static_cast<int>(flat / (d * d)), static_cast<int>((flat / d) % d), static_cast<int>(flat % d)};
}

FockState::FockState(FockCutoff cutoff, std::vector<Complex> amplitudes)
    : cutoff_(cutoff), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != cutoff_.dim()) throw InvalidArgument("FockState: amplitude count does not match cutoff");
  norm_sq_ = kernels::norm_sq(amplitudes_);
  const int top = cutoff_.n_max();
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    const auto n = cutoff_.multi_index(i);
    if (n[0] == top || n[1] == top || n[2] == top) tail_mass_ += std::norm(amplitudes_[i]);
  }
}

FockState vacuum(FockCutoff cutoff) { return basis_state(cutoff, 0, 0, 0); }

FockState basis_state(FockCutoff cutoff, int n1, int n2, int n3) {
  std::vector<Complex> amp(cutoff.dim(), 0.0);
  amp[cutoff.flat_index(n1, n2, n3)] = 1.0;
  return FockState(cutoff, std::move(amp));
}

FockState coherent_state(FockCutoff cutoff, Complex z1, Complex z2, Complex z3) {
  const std::size_t d = cutoff.local_dim();
  const Complex z[3] = {z1, z2, z3};
  std::vector<Complex> mode[3];
  for (int m = 0; m < 3; ++m) {
    mode[m].resize(d);
    mode[m][0] = std::exp(-0.5 * std::norm(z[m]));
    for (std::size_t n = 1; n < d; ++n) mode[m][n] = mode[m][n - 1] * z[m] / std::sqrt(static_cast<double>(n));
  }
  std::vector<Complex> amp(cutoff.dim());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) amp[(i * d + j) * d + k] = mode[0][i] * mode[1][j] * mode[2][k];
  return FockState(cutoff, std::move(amp));
}

Complex overlap(const FockState& a, const FockState& b) {
  if (!(a.cutoff() == b.cutoff())) throw InvalidArgument("overlap: cutoff mismatch");
  return kernels::dot(a.amplitudes(), b.amplitudes());
}

double fidelity(const FockState& a, const FockState& b) { return std::norm(overlap(a, b)); }

double max_abs_diff(const FockState& a, const FockState& b) {
  if (!(a.cutoff() == b.cutoff())) throw InvalidArgument("max_abs_diff: cutoff mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i)
    best = std::max(best, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
  return best;
}

std::string to_json(const FockState& state, int indent) {
  nlohmann::ordered_json j;
  j["cutoff"] = state.cutoff().n_max();
  j["ordering"] = "n1-major";
  auto amps = nlohmann::ordered_json::array();
  for (const auto& a : state.amplitudes()) amps.push_back({a.real(), a.imag()});
  j["amplitudes"] = std::move(amps);
  j["tail_mass"] = state.tail_mass();
  return j.dump(indent);
}

}  // namespace sq3
