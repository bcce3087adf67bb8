#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sq3/fock_basis.hpp"

namespace sq3 {

/// Point (q, p) of six-dimensional phase space; alpha_i = (q_i + i p_i)/sqrt 2.
struct PhasePoint {
  std::array<double, 3> q{};
  std::array<double, 3> p{};
};

/// W(q, p) = pi^-3 exp(-q^T e^{2L} q - p^T e^{-2L} p). The three-mode vacuum
/// maps to pi^-3 exp(-|q|^2 - |p|^2).
double wigner_closed_form(double mu, double nu, const PhasePoint& pt);

/// pi^-3 <psi| D(alpha) Pi D(alpha)^dagger |psi> with Pi the total photon
/// parity and D built by exponential action on the truncated space. Throws
/// PrecisionError if the input tail mass is above 1e-8 or the displaced state
/// leaks more than 1e-8 onto the boundary shell.
double wigner_numeric(const FockState& state, const PhasePoint& pt);

/// Analytic integral of the closed-form W over phase space.
double wigner_marginal_norm(double mu, double nu);

enum class Coord { q1, q2, q3, p1, p2, p3 };

std::string_view coord_name(Coord c) noexcept;
std::optional<Coord> parse_coord(std::string_view name) noexcept;

struct GridAxis {
  Coord coord = Coord::q1;
  double min = 0.0;
  double max = 0.0;
  int count = 2;
};

struct GridSpec {
  /// At most two axes, distinct, count >= 2 each. First axis varies slowest.
  std::vector<GridAxis> sweeps;
  /// Values of the coordinates that are not swept.
  PhasePoint fixed;
};

struct WignerGrid {
  GridSpec spec;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  PhasePoint point(std::size_t index) const;
};

/// Closed-form W on every grid point, row-major in sweep order. Throws
/// InvalidArgument for malformed axis specs.
WignerGrid wigner_grid(double mu, double nu, const GridSpec& spec);

/// Parses "q1=-2:2:41".
GridAxis parse_sweep(std::string_view text);

}  // namespace sq3
