#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>

#include "wgabc/errors.hpp"
#include "wgabc/field.hpp"
#include "wgabc/grid.hpp"
#include "wgabc/medium.hpp"

namespace wgabc {

enum class Side : std::uint8_t { Left = 0, Right = 1, Bottom = 2, Top = 3 };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Bottom: return "bottom";
    case Side::Top: return "top";
  }
  return "?";
}

/// Small bit set of grid sides.
class SideSet {
public:
  constexpr SideSet() = default;
  constexpr SideSet(std::initializer_list<Side> sides) {
    for (Side s : sides) insert(s);
  }
  static constexpr SideSet all() { return {Side::Left, Side::Right, Side::Bottom, Side::Top}; }

  constexpr void insert(Side s) { bits_ |= bit(s); }
  constexpr bool contains(Side s) const { return (bits_ & bit(s)) != 0; }
  constexpr bool operator==(const SideSet&) const = default;

private:
  static constexpr std::uint8_t bit(Side s) { return std::uint8_t(1u << static_cast<unsigned>(s)); }
  std::uint8_t bits_ = 0;
};

/// Sound speed sampled once per grid node, together with the Courant factor
/// (c tau / h)^2 that the leapfrog update needs.
struct NodalSpeed {
  Field2D c;
  Field2D courant2;

  NodalSpeed() = default;
  NodalSpeed(const SoundSpeedModel& model, const Grid& grid)
      : c(grid.nx, grid.rows()), courant2(grid.nx, grid.rows()) {
    const double r = grid.tau / grid.h;
    for (std::size_t j = 0; j < grid.nx; ++j)
      for (std::size_t l = 0; l < grid.rows(); ++l) {
        const double cj = model.speed(grid.x(j), grid.y(l));
        c(j, l) = cj;
        courant2(j, l) = cj * cj * r * r;
      }
  }
};

/// Three consecutive time levels of the field.
class WaveState {
public:
  Field2D u_prev;
  Field2D u_curr;
  Field2D u_next;

  WaveState() = default;
  explicit WaveState(const Grid& grid)
      : u_prev(grid.nx, grid.rows()),
        u_curr(grid.nx, grid.rows()),
        u_next(grid.nx, grid.rows()),
        tau_(grid.tau) {}

  std::size_t step_index() const noexcept { return step_; }
  double time() const noexcept { return static_cast<double>(step_) * tau_; }
  double tau() const noexcept { return tau_; }
  std::size_t nx() const noexcept { return u_curr.nx(); }
  std::size_t rows() const noexcept { return u_curr.ny(); }

  /// Marks which parts of u_next hold the new level. advance() requires all.
  void mark_interior() noexcept { interior_ready_ = true; }
  void mark_side(Side s) noexcept { sides_ready_.insert(s); }
  bool interior_ready() const noexcept { return interior_ready_; }
  bool side_ready(Side s) const noexcept { return sides_ready_.contains(s); }
  bool next_complete() const noexcept { return interior_ready_ && sides_ready_ == SideSet::all(); }

  /// Rotates levels: prev <- curr, curr <- next. The old prev buffer becomes
  /// scratch space for the next u_next.
  void advance() {
    if (!next_complete())
      throw ContractViolation("advance() called before u_next was fully populated at step " +
                              std::to_string(step_));
    std::swap(u_prev, u_curr);
    std::swap(u_curr, u_next);
    ++step_;
    interior_ready_ = false;
    sides_ready_ = {};
  }

  /// Restarts the step counter, e.g. after the source pre-phase.
  void reset_clock() noexcept {
    step_ = 0;
    interior_ready_ = false;
    sides_ready_ = {};
  }

private:
  double tau_ = 0.0;
  std::size_t step_ = 0;
  bool interior_ready_ = false;
  SideSet sides_ready_;
};

/// Leapfrog update on every node except the outermost ring:
/// u_next = 2 u - u_prev + (c tau/h)^2 (u_E + u_W + u_N + u_S - 4 u).
inline void step_interior(WaveState& s, const NodalSpeed& speed) {
  const std::size_t nx = s.nx(), ny = s.rows();
  for (std::size_t j = 1; j + 1 < nx; ++j) {
    const double* um = s.u_curr.column(j - 1).data();
    const double* u0 = s.u_curr.column(j).data();
    const double* up = s.u_curr.column(j + 1).data();
    const double* uo = s.u_prev.column(j).data();
    const double* k2 = speed.courant2.column(j).data();
    double* un = s.u_next.column(j).data();
    for (std::size_t l = 1; l + 1 < ny; ++l) {
      const double lap = um[l] + up[l] + u0[l - 1] + u0[l + 1] - 4.0 * u0[l];
      un[l] = 2.0 * u0[l] - uo[l] + k2[l] * lap;
    }
  }
  s.mark_interior();
}

inline void step_interior(WaveState& s, const SoundSpeedModel& model, const Grid& grid) {
  step_interior(s, NodalSpeed(model, grid));
}

namespace detail {

// Leapfrog update at (j, l) with mirrored ghosts: a ghost column repeats the
// edge column (walls half a cell outside), a ghost row repeats the first row
// inside (walls on the edge rows).
inline double stencil_with_ghosts(const WaveState& s, const NodalSpeed& speed, std::size_t j,
                                  std::size_t l) {
  const std::size_t nx = s.nx(), ny = s.rows();
  const std::size_t jw = j == 0 ? 0 : j - 1;
  const std::size_t je = j + 1 == nx ? j : j + 1;
  const std::size_t ls = l == 0 ? 1 : l - 1;
  const std::size_t ln = l + 1 == ny ? ny - 2 : l + 1;
  const Field2D& u = s.u_curr;
  const double lap = u(jw, l) + u(je, l) + u(j, ls) + u(j, ln) - 4.0 * u(j, l);
  return 2.0 * u(j, l) - s.u_prev(j, l) + speed.courant2(j, l) * lap;
}

}  // namespace detail

/// Zero-Neumann walls on the requested sides. Corners get the double mirror.
inline void apply_hard_wall(WaveState& s, const NodalSpeed& speed, SideSet sides) {
  const std::size_t nx = s.nx(), ny = s.rows();
  if (sides.contains(Side::Left)) {
    for (std::size_t l = 0; l < ny; ++l) s.u_next(0, l) = detail::stencil_with_ghosts(s, speed, 0, l);
    s.mark_side(Side::Left);
  }
  if (sides.contains(Side::Right)) {
    for (std::size_t l = 0; l < ny; ++l)
      s.u_next(nx - 1, l) = detail::stencil_with_ghosts(s, speed, nx - 1, l);
    s.mark_side(Side::Right);
  }
  if (sides.contains(Side::Bottom)) {
    for (std::size_t j = 0; j < nx; ++j) s.u_next(j, 0) = detail::stencil_with_ghosts(s, speed, j, 0);
    s.mark_side(Side::Bottom);
  }
  if (sides.contains(Side::Top)) {
    for (std::size_t j = 0; j < nx; ++j)
      s.u_next(j, ny - 1) = detail::stencil_with_ghosts(s, speed, j, ny - 1);
    s.mark_side(Side::Top);
  }
}

inline void advance(WaveState& s) { s.advance(); }

/// Leapfrog energy between levels prev and curr:
///   h^2 sum w [ (1/c^2) ((u_curr - u_prev)/tau)^2 + grad u_curr . grad u_prev ]
/// with half weights on the wall rows. It is invariant under step_interior +
/// apply_hard_wall on all four sides.
inline double discrete_energy(const WaveState& s, const NodalSpeed& speed, const Grid& grid) {
  const std::size_t nx = s.nx(), ny = s.rows();
  const double h = grid.h, tau = grid.tau;
  const Field2D& a = s.u_curr;
  const Field2D& b = s.u_prev;
  auto row_weight = [ny](std::size_t l) { return (l == 0 || l + 1 == ny) ? 0.5 : 1.0; };

  double kinetic = 0.0, potential = 0.0;
  for (std::size_t j = 0; j < nx; ++j)
    for (std::size_t l = 0; l < ny; ++l) {
      const double c = speed.c(j, l);
      const double ut = (a(j, l) - b(j, l)) / tau;
      kinetic += row_weight(l) * ut * ut / (c * c);
      if (j + 1 < nx)
        potential += row_weight(l) * (a(j + 1, l) - a(j, l)) * (b(j + 1, l) - b(j, l)) / (h * h);
      if (l + 1 < ny)
        potential += (a(j, l + 1) - a(j, l)) * (b(j, l + 1) - b(j, l)) / (h * h);
    }
  return (kinetic + potential) * h * h;
}

inline double discrete_energy(const WaveState& s, const SoundSpeedModel& model, const Grid& grid) {
  return discrete_energy(s, NodalSpeed(model, grid), grid);
}

}  // namespace wgabc
