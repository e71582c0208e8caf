#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wgabc {

/// Uniform grid over [x_offset, x_offset + Lx] x [0, Ly].
///
/// Columns are cell centred in x: x_j = x_offset + (j + 1/2) h for j = 0..nx-1,
/// so the vertical walls sit half a cell outside the first and last column.
/// Rows are node centred in y: y_l = l h for l = 0..ny, so the waveguide walls
/// y = 0 and y = Ly carry grid rows. There are ny + 1 rows.
struct Grid {
  double Lx = 0.0;
  double Ly = 0.0;
  double h = 0.0;
  double tau = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  double x_offset = 0.0;

  std::size_t rows() const noexcept { return ny + 1; }

  // The offset is a whole number of cells, so x_j is computed from integers
  // and identical columns of grids with different offsets agree bit for bit.
  long offset_cells() const noexcept { return std::lround(x_offset / h); }

  double x(std::size_t j) const noexcept {
    return (static_cast<double>(j) + 0.5 + static_cast<double>(offset_cells())) * h;
  }
  double y(std::size_t l) const noexcept { return static_cast<double>(l) * h; }

  double x_left() const noexcept { return static_cast<double>(offset_cells()) * h; }
  double x_right() const noexcept {
    return (static_cast<double>(offset_cells()) + static_cast<double>(nx)) * h;
  }
};

namespace detail {

inline std::size_t whole_cells(double length, double h, const char* name) {
  const double n = length / h;
  const double r = std::round(n);
  if (std::abs(n - r) > 1e-6 * std::max(1.0, n))
    throw std::invalid_argument(std::string(name) + " must be a multiple of h");
  return static_cast<std::size_t>(r);
}

}  // namespace detail

/// Builds the grid with tau = cfl_number * h / (c_max * sqrt(2)).
inline Grid make_grid(double Lx, double Ly, double h, double cfl_number, double c_max,
                      double x_offset = 0.0) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  if (!(Lx > 0.0)) throw std::invalid_argument("Lx must be positive");
  if (!(Ly > 0.0)) throw std::invalid_argument("Ly must be positive");
  if (!(c_max > 0.0)) throw std::invalid_argument("c_max must be positive");
  if (!(cfl_number > 0.0 && cfl_number <= 1.0))
    throw std::invalid_argument("cfl_number must lie in (0, 1]");

  Grid g;
  g.Lx = Lx;
  g.Ly = Ly;
  g.h = h;
  g.nx = detail::whole_cells(Lx, h, "Lx");
  g.ny = detail::whole_cells(Ly, h, "Ly");
  if (std::abs(x_offset) > 0.0) {
    const double n = x_offset / h;
    if (std::abs(n - std::round(n)) > 1e-6 * std::max(1.0, std::abs(n)))
      throw std::invalid_argument("x_offset must be a multiple of h");
  }
  g.x_offset = x_offset;
  g.tau = cfl_number * h / (c_max * std::numbers::sqrt2);
  if (g.nx < 4 || g.ny < 3) throw std::invalid_argument("grid too small (need nx >= 4, ny >= 3)");
  return g;
}

}  // namespace wgabc
