#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wgabc/errors.hpp"
#include "wgabc/grid.hpp"
#include "wgabc/medium.hpp"
#include "wgabc/solver.hpp"

namespace wgabc {

/// Form of the depth-flux term integrated in time at the boundary.
enum class TappertFlux {
  // (c u_y)_y discretised as D+_y (c_{l-1/2} D-_y u)
  Conservative,
  // (c + c_y/2) D+_y D-_y u, the term-by-term printed variant
  Literal,
};

/// Per-row coefficients and running time integrals for the time-dependent
/// Tappert condition on one vertical boundary.
///
/// On the left boundary (waves leaving towards -x) the condition is
///   u_x - u_t/c + a(y) int_0^t u ds + 1/2 int_0^t (c u_y)_y ds = 0,
///   a(y) = (c_yy - c_y^2/c) / 4,
/// and on the right boundary the signs of u_x and the integrals flip. Both
/// integrals are kept as running sums so the per-step cost is O(rows).
struct TappertState {
  Side side = Side::Left;
  TappertFlux flux = TappertFlux::Conservative;
  double h = 0.0;
  double tau = 0.0;

  std::vector<double> coef_a;   // (c_yy - c_y^2/c)/4 at the boundary
  std::vector<double> coef_c;   // c at the boundary
  std::vector<double> c_half;   // c at (x_b, y_l + h/2), l = 0..rows-2
  std::vector<double> c_lit;    // c + c_y/2, only used by TappertFlux::Literal
  std::vector<double> acc_a;    // tau * sum of the column-pair mean
  std::vector<double> acc_d;    // tau * sum of the depth flux of that mean

  std::size_t synced_step = 0;  // accumulators include every level up to this

  std::size_t rows() const noexcept { return coef_a.size(); }
};

namespace detail {

inline std::pair<std::size_t, std::size_t> tappert_columns(Side side, std::size_t nx) {
  if (side == Side::Left) return {0, 1};
  if (side == Side::Right) return {nx - 1, nx - 2};
  throw std::invalid_argument("the Tappert condition is only defined on the left or right side");
}

// Depth flux of the column-pair mean `m` at row l, mirrored at the walls.
inline double tappert_flux(const TappertState& t, const std::vector<double>& m, std::size_t l) {
  const std::size_t n = m.size();
  const double h2 = t.h * t.h;
  if (t.flux == TappertFlux::Literal) {
    const double below = l == 0 ? m[1] : m[l - 1];
    const double above = l + 1 == n ? m[n - 2] : m[l + 1];
    return t.c_lit[l] * (above - 2.0 * m[l] + below) / h2;
  }
  if (l == 0) return 2.0 * t.c_half[0] * (m[1] - m[0]) / h2;
  if (l + 1 == n) return 2.0 * t.c_half[n - 2] * (m[n - 2] - m[n - 1]) / h2;
  return (t.c_half[l] * (m[l + 1] - m[l]) - t.c_half[l - 1] * (m[l] - m[l - 1])) / h2;
}

}  // namespace detail

/// Coefficients are taken on the physical boundary line (x = x_offset on the
/// left, x_offset + Lx on the right); accumulators start at zero.
inline TappertState tappert_init(const Grid& grid, const SoundSpeedModel& model, Side side,
                                 TappertFlux flux = TappertFlux::Conservative,
                                 std::size_t start_step = 0) {
  detail::tappert_columns(side, grid.nx);
  TappertState t;
  t.side = side;
  t.flux = flux;
  t.h = grid.h;
  t.tau = grid.tau;
  t.synced_step = start_step;

  const double xb = side == Side::Left ? grid.x_left() : grid.x_right();
  const std::size_t n = grid.rows();
  t.coef_a.resize(n);
  t.coef_c.resize(n);
  t.c_lit.resize(n);
  t.c_half.resize(n - 1);
  for (std::size_t l = 0; l < n; ++l) {
    const SpeedSample s = model.eval(xb, grid.y(l));
    t.coef_c[l] = s.c;
    t.coef_a[l] = 0.25 * (s.c_yy - s.c_y * s.c_y / s.c);
    t.c_lit[l] = s.c + 0.5 * s.c_y;
    if (l + 1 < n) t.c_half[l] = model.speed(xb, grid.y(l) + 0.5 * grid.h);
  }
  t.acc_a.assign(n, 0.0);
  t.acc_d.assign(n, 0.0);
  return t;
}

/// Mean of the boundary column and its neighbour at the current level.
inline std::vector<double> tappert_pair_mean(const WaveState& s, Side side) {
  const auto [b, nb] = detail::tappert_columns(side, s.nx());
  std::vector<double> m(s.rows());
  for (std::size_t l = 0; l < m.size(); ++l) m[l] = 0.5 * (s.u_curr(b, l) + s.u_curr(nb, l));
  return m;
}

/// Adds the level just produced by advance() to the running integrals.
inline void tappert_accumulate(TappertState& t, const WaveState& s) {
  if (s.step_index() != t.synced_step + 1)
    throw ContractViolation("Tappert accumulators are at step " + std::to_string(t.synced_step) +
                            " but the field is at step " + std::to_string(s.step_index()) +
                            "; accumulate exactly once after each advance()");
  const std::vector<double> m = tappert_pair_mean(s, t.side);
  for (std::size_t l = 0; l < m.size(); ++l) {
    t.acc_a[l] += t.tau * m[l];
    t.acc_d[l] += t.tau * detail::tappert_flux(t, m, l);
  }
  t.synced_step = s.step_index();
}

/// Discrete residual of the condition at every row for a fully populated
/// u_next, written with the inward normal derivative so both sides share one
/// form. The box scheme is centred at (t + tau/2, midpoint of the two
/// boundary columns); the integrals are the accumulators, which approximate
/// int_0^{t + tau/2} to second order.
inline std::vector<double> tappert_residual(const WaveState& s, const TappertState& t) {
  const auto [b, nb] = detail::tappert_columns(t.side, s.nx());
  std::vector<double> r(s.rows());
  for (std::size_t l = 0; l < r.size(); ++l) {
    const double ub0 = s.u_curr(b, l), ub1 = s.u_next(b, l);
    const double un0 = s.u_curr(nb, l), un1 = s.u_next(nb, l);
    // inward derivative: u_x on the left, -u_x on the right
    const double ux = ((un0 + un1) - (ub0 + ub1)) / (2.0 * t.h);
    const double ut = ((ub1 + un1) - (ub0 + un0)) / (2.0 * t.tau);
    const double integrals = t.coef_a[l] * t.acc_a[l] + 0.5 * t.acc_d[l];
    r[l] = ux - ut / t.coef_c[l] + integrals;
  }
  return r;
}

/// Solves the boundary column of u_next. Each row has one unknown whose
/// coefficient 1/(2h) + 1/(2 c tau) is strictly positive.
inline void tappert_apply(WaveState& s, const TappertState& t) {
  if (t.synced_step != s.step_index())
    throw ContractViolation("Tappert accumulators are at step " + std::to_string(t.synced_step) +
                            ", field at step " + std::to_string(s.step_index()));
  if (!s.interior_ready() || !s.side_ready(Side::Bottom) || !s.side_ready(Side::Top))
    throw ContractViolation("tappert_apply needs the interior and wall rows of u_next first");
  if (t.rows() != s.rows()) throw ContractViolation("Tappert state built for a different grid");

  const auto [b, nb] = detail::tappert_columns(t.side, s.nx());
  const double inv2h = 0.5 / t.h;
  for (std::size_t l = 0; l < t.rows(); ++l) {
    const double inv2ct = 0.5 / (t.coef_c[l] * t.tau);
    const double a = s.u_curr(b, l), nb0 = s.u_curr(nb, l), w = s.u_next(nb, l);
    const double integrals = t.coef_a[l] * t.acc_a[l] + 0.5 * t.acc_d[l];
    const double rhs = (nb0 + w - a) * inv2h - (w - a - nb0) * inv2ct + integrals;
    s.u_next(b, l) = rhs / (inv2h + inv2ct);
  }
  s.mark_side(t.side);
}

}  // namespace wgabc
