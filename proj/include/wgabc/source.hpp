#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wgabc/errors.hpp"
#include "wgabc/field.hpp"
#include "wgabc/grid.hpp"
#include "wgabc/solver.hpp"

namespace wgabc {

/// Time signature of the point source.
enum class Waveform {
  Sin2,      // sin^2(pi t/d)
  ZeroMean,  // d/dt sin^4(pi t/d), scaled to unit peak; integrates to zero
};

/// Point source of short duration.
struct SourceSpec {
  double x_s = 5.0;
  double y_s = 5.0;
  double duration = 1.0;
  double amplitude = 1.0;
  double c0 = 1.0;  // speed of the homogeneous medium used for the pre-phase
  Waveform waveform = Waveform::Sin2;
};

/// sin^2 pulse supported on [0, d].
inline double pulse(double t, double duration) {
  if (t <= 0.0 || t >= duration) return 0.0;
  const double s = std::sin(std::numbers::pi * t / duration);
  return s * s;
}

/// Derivative of sin^4(pi t/d) on [0, d], normalised to a peak of 1. Being a
/// derivative of a compactly supported function it has zero time integral.
inline double zero_mean_pulse(double t, double duration) {
  if (t <= 0.0 || t >= duration) return 0.0;
  const double a = std::numbers::pi * t / duration;
  const double s = std::sin(a);
  // max of sin^3 cos is (3/4)^(3/2) / 2 at a = pi/3
  return s * s * s * std::cos(a) / (0.6495190528383290 / 2.0);
}

inline double source_signal(const SourceSpec& src, double t) {
  return src.waveform == Waveform::Sin2 ? pulse(t, src.duration) : zero_mean_pulse(t, src.duration);
}

/// Bilinear split of a point onto the four surrounding nodes. The fractional
/// position is rounded to 2^-20 cells, so grids whose columns coincide get
/// bit-identical weights.
struct SourceFootprint {
  std::size_t j0 = 0;  // lower-left node
  std::size_t l0 = 0;
  std::array<double, 2> wx{1.0, 0.0};
  std::array<double, 2> wy{1.0, 0.0};
};

inline SourceFootprint source_footprint(const Grid& grid, double x_s, double y_s) {
  constexpr double quantum = 1048576.0;  // 2^20
  const double fx = std::round(((x_s - grid.x_left()) / grid.h - 0.5) * quantum) / quantum;
  const double fy = std::round((y_s / grid.h) * quantum) / quantum;
  if (!(fx > 0.0 && fx < static_cast<double>(grid.nx - 1)) ||
      !(fy > 0.0 && fy < static_cast<double>(grid.ny)))
    throw ConfigurationError("source (" + std::to_string(x_s) + ", " + std::to_string(y_s) +
                             ") is not strictly inside the grid");
  SourceFootprint f;
  f.j0 = static_cast<std::size_t>(std::floor(fx));
  f.l0 = static_cast<std::size_t>(std::floor(fy));
  const double ax = fx - static_cast<double>(f.j0);
  const double ay = fy - static_cast<double>(f.l0);
  f.wx = {1.0 - ax, ax};
  f.wy = {1.0 - ay, ay};
  return f;
}

namespace detail {

// Cells of margin beyond the physical radius c0*d of the pre-phase patch.
// The leapfrog precursor ahead of the front has decayed below 1e-17 of the
// peak by then.
inline constexpr std::size_t kPatchMargin = 16;

}  // namespace detail

/// Initial two levels: the field radiated during [0, d] by the point source in
/// a homogeneous medium of speed c0, computed on a local patch around the
/// source and pasted into an otherwise zero grid. Time restarts at 0.
inline WaveState make_initial(const Grid& grid, const SourceSpec& src) {
  if (!(src.duration > 0.0)) throw std::invalid_argument("source duration must be positive");
  if (!(src.c0 > 0.0)) throw std::invalid_argument("source c0 must be positive");
  WaveState out(grid);
  const SourceFootprint fp = source_footprint(grid, src.x_s, src.y_s);
  if (src.amplitude == 0.0) return out;

  const double h = grid.h, tau = grid.tau;
  const auto radius = static_cast<std::size_t>(std::ceil(src.c0 * src.duration / h));
  const std::size_t half = radius + detail::kPatchMargin;
  if (fp.j0 < half || fp.j0 + 1 + half >= grid.nx || fp.l0 < half || fp.l0 + 1 + half >= grid.rows())
    throw ConfigurationError("source pre-phase (radius " + std::to_string(src.c0 * src.duration) +
                             ") reaches the grid edge");

  // Patch covers global columns [j0 - half, j0 + 1 + half], rows likewise.
  const std::size_t n = 2 * half + 2;
  Field2D prev(n, n), curr(n, n), next(n, n);
  const double k2 = src.c0 * src.c0 * tau * tau / (h * h);
  const double kick = src.amplitude * k2;
  const auto last = static_cast<std::size_t>(std::ceil(src.duration / tau - 1e-12));

  for (std::size_t step = 0; step <= last; ++step) {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        const double w = j > 0 ? curr(j - 1, l) : 0.0;
        const double e = j + 1 < n ? curr(j + 1, l) : 0.0;
        const double s = l > 0 ? curr(j, l - 1) : 0.0;
        const double nn = l + 1 < n ? curr(j, l + 1) : 0.0;
        next(j, l) = 2.0 * curr(j, l) - prev(j, l) + k2 * (w + e + s + nn - 4.0 * curr(j, l));
      }
    const double g = source_signal(src, static_cast<double>(step) * tau);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        next(half + a, half + b) += kick * g * fp.wx[a] * fp.wy[b];
    std::swap(prev, curr);
    std::swap(curr, next);
  }

  const std::size_t gj = fp.j0 - half, gl = fp.l0 - half;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      out.u_prev(gj + j, gl + l) = prev(j, l);
      out.u_curr(gj + j, gl + l) = curr(j, l);
    }
  out.reset_clock();
  return out;
}

/// Adds the source forcing for level step+1 into u_next, using the local node
/// speeds. Used when the source runs inside the main (variable-c) simulation.
inline void inject_source(WaveState& s, const NodalSpeed& speed, const SourceFootprint& fp,
                          const SourceSpec& src, double h) {
  const double g = source_signal(src, s.time());
  if (g == 0.0) return;
  const double r2 = s.tau() * s.tau() / (h * h);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      const double c = speed.c(fp.j0 + a, fp.l0 + b);
      s.u_next(fp.j0 + a, fp.l0 + b) += src.amplitude * c * c * r2 * g * fp.wx[a] * fp.wy[b];
    }
}

}  // namespace wgabc
