#include "sq3/wigner.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "sq3/errors.hpp"
#include "sq3/format.hpp"
#include "sq3/expmv.hpp"
#include "sq3/genmat.hpp"
#include "sq3/kernels.hpp"
#include "sq3/operators.hpp"

namespace sq3 {
namespace {

constexpr double kInvPi3 = 1.0 / (std::numbers::pi * std::numbers::pi * std::numbers::pi);

double& coord_ref(PhasePoint& pt, Coord c) {
  const auto i = static_cast<int>(c);
  return i < 3 ? pt.q[i] : pt.p[i - 3];
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw InvalidArgument("cannot parse number '" + std::string(s) + "'");
  return v;
}

}  // namespace

double wigner_closed_form(double mu, double nu, const PhasePoint& pt) {
  const auto doubled = build_generator(mu, nu).scaled(2.0);
  const Matrix e_pos = exp_closed_form(doubled, ExpSign::positive);
  const Matrix e_neg = exp_closed_form(doubled, ExpSign::negative);
  return kInvPi3 * std::exp(-quadratic_form3(e_pos, pt.q.data()) - quadratic_form3(e_neg, pt.p.data()));
}

double wigner_numeric(const FockState& state, const PhasePoint& pt) {
  if (state.tail_mass() > 1e-8) {
    throw PrecisionError("wigner_numeric: input tail mass " + format_double(state.tail_mass()) + " above 1e-8");
  }
  const auto cutoff = state.cutoff();
  // D(alpha)^dagger = exp(sum_i -alpha_i a_i^dagger + conj(alpha_i) a_i)
  SparseMatrix generator(cutoff.dim(), cutoff.dim());
  for (int m = 1; m <= 3; ++m) {
    const Complex alpha = Complex{pt.q[m - 1], pt.p[m - 1]} / std::sqrt(2.0);
    if (alpha == Complex{0.0}) continue;
    const auto a = build_mode_operator(cutoff, OperatorKind::annihilation, m).matrix();
    const auto c = build_mode_operator(cutoff, OperatorKind::creation, m).matrix();
    generator = generator + (-alpha) * c + std::conj(alpha) * a;
  }
  ExpmvOptions opts;
  opts.tol = 1e-13;
  const FockState displaced(cutoff, expmv(generator, state.amplitudes(), opts).vec);
  if (displaced.tail_mass() > 1e-8) {
    throw PrecisionError("wigner_numeric: displacement pushes " + format_double(displaced.tail_mass()) +
                         " probability onto the cutoff boundary");
  }
  double parity = 0.0;
  const auto amps = displaced.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto n = cutoff.multi_index(i);
    const double w = std::norm(amps[i]);
    parity += ((n[0] + n[1] + n[2]) % 2 == 0) ? w : -w;
  }
  return kInvPi3 * parity;
}

double wigner_marginal_norm(double mu, double nu) {
  const auto doubled = build_generator(mu, nu).scaled(2.0);
  const double det_pos = determinant3(exp_closed_form(doubled, ExpSign::positive));
  const double det_neg = determinant3(exp_closed_form(doubled, ExpSign::negative));
  // Gaussian integrals: int exp(-x^T A x) d^3x = pi^{3/2} / sqrt(det A).
  const double pi32 = std::pow(std::numbers::pi, 1.5);
  return kInvPi3 * (pi32 / std::sqrt(det_pos)) * (pi32 / std::sqrt(det_neg));
}

std::string_view coord_name(Coord c) noexcept {
  static constexpr std::string_view names[] = {"q1", "q2", "q3", "p1", "p2", "p3"};
  return names[static_cast<int>(c)];
}

std::optional<Coord> parse_coord(std::string_view name) noexcept {
  for (int i = 0; i < 6; ++i) {
    const auto c = static_cast<Coord>(i);
    if (coord_name(c) == name) return c;
  }
  return std::nullopt;
}

PhasePoint WignerGrid::point(std::size_t index) const {
  PhasePoint pt = spec.fixed;
  for (auto it = spec.sweeps.rbegin(); it != spec.sweeps.rend(); ++it) {
    const auto count = static_cast<std::size_t>(it->count);
    const std::size_t i = index % count;
    index /= count;
    coord_ref(pt, it->coord) =
        i + 1 == count ? it->max : it->min + (it->max - it->min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return pt;
}

WignerGrid wigner_grid(double mu, double nu, const GridSpec& spec) {
  if (spec.sweeps.size() > 2) throw InvalidArgument("wigner_grid: at most two swept axes");
  for (std::size_t i = 0; i < spec.sweeps.size(); ++i) {
    const auto& ax = spec.sweeps[i];
    if (ax.count < 2) throw InvalidArgument("wigner_grid: each swept axis needs count >= 2");
    if (!std::isfinite(ax.min) || !std::isfinite(ax.max)) throw InvalidArgument("wigner_grid: non-finite axis bound");
    if (i == 1 && spec.sweeps[0].coord == ax.coord) throw InvalidArgument("wigner_grid: duplicate axis");
  }
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(spec.fixed.q[i]) || !std::isfinite(spec.fixed.p[i]))
      throw InvalidArgument("wigner_grid: non-finite fixed coordinate");
  }

  WignerGrid grid{spec, {}};
  std::size_t total = 1;
  for (const auto& ax : spec.sweeps) total *= static_cast<std::size_t>(ax.count);

  std::vector<double> coords[6];
  for (auto& c : coords) c.resize(total);
  for (std::size_t k = 0; k < total; ++k) {
    const auto pt = grid.point(k);
    for (int i = 0; i < 3; ++i) {
      coords[i][k] = pt.q[i];
      coords[i + 3][k] = pt.p[i];
    }
  }

  const auto doubled = build_generator(mu, nu).scaled(2.0);
  const Matrix e_pos = exp_closed_form(doubled, ExpSign::positive);
  const Matrix e_neg = exp_closed_form(doubled, ExpSign::negative);
  kernels::PhasePoints pts;
  for (int i = 0; i < 3; ++i) {
    pts.q[i] = coords[i];
    pts.p[i] = coords[i + 3];
  }
  grid.values.resize(total);
  kernels::gaussian_exponent(e_pos.data().data(), e_neg.data().data(), pts, grid.values);
  for (auto& v : grid.values) v = kInvPi3 * std::exp(-v);
  return grid;
}

GridAxis parse_sweep(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw InvalidArgument("sweep must look like AXIS=min:max:count");
  const auto coord = parse_coord(text.substr(0, eq));
  if (!coord) throw InvalidArgument("unknown sweep axis '" + std::string(text.substr(0, eq)) + "'");
  const auto rest = text.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw InvalidArgument("sweep must look like AXIS=min:max:count");
  GridAxis ax;
  ax.coord = *coord;
  ax.min = parse_double(rest.substr(0, c1));
  ax.max = parse_double(rest.substr(c1 + 1, c2 - c1 - 1));
  const auto count_text = rest.substr(c2 + 1);
  int count = 0;
  const auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) throw InvalidArgument("bad sweep count");
  ax.count = count;
  if (count < 2) throw InvalidArgument("sweep count must be >= 2");
  return ax;
}

}  // namespace sq3
