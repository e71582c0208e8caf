#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgabc/boundary.hpp"
#include "wgabc/errors.hpp"
#include "wgabc/field.hpp"
#include "wgabc/grid.hpp"
#include "wgabc/medium.hpp"
#include "wgabc/solver.hpp"
#include "wgabc/source.hpp"

namespace wgabc {

enum class SourceMode {
  PrePhase,  // initial levels from a homogeneous run of the source
  Inject,    // zero start, forcing applied inside the main run
};

/// One truncated-vs-extended experiment. The artificial boundary is the left
/// side x = 0; top, bottom and right are hard walls in both runs.
struct ExperimentSpec {
  std::string name;
  SoundSpeedModel medium;
  SourceSpec source;
  double Lx = 10.0;
  double Ly = 10.0;
  double h = 0.1;
  double cfl_number = 0.9;
  double T_final = 20.0;
  BoundarySpec boundary;
  double extension = 0.0;  // 0 selects the minimum safe extension
  std::size_t stride = 10;
  TappertFlux flux = TappertFlux::Conservative;
  SourceMode source_mode = SourceMode::PrePhase;
  // Replaces the source-generated initial levels when set (e.g. plane waves).
  std::function<WaveState(const Grid&)> initial;
};

inline double c_max(const ExperimentSpec& e) { return e.medium.c_max(); }

/// Smallest multiple of h with c_max T + c0 d <= extension.
inline double minimum_extension(const ExperimentSpec& e) {
  const double need = c_max(e) * e.T_final + e.source.c0 * e.source.duration;
  return std::ceil(need / e.h - 1e-9) * e.h;
}

inline double extension_of(const ExperimentSpec& e) {
  const double min_ext = minimum_extension(e);
  if (e.extension == 0.0) return min_ext;
  if (e.extension < min_ext - 1e-9 * e.h)
    throw ConfigurationError("extension " + std::to_string(e.extension) +
                             " lets waves reach the far wall; need at least " +
                             std::to_string(min_ext));
  return std::ceil(e.extension / e.h - 1e-9) * e.h;
}

inline Grid truncated_grid(const ExperimentSpec& e) {
  return make_grid(e.Lx, e.Ly, e.h, e.cfl_number, c_max(e));
}

inline Grid extended_grid(const ExperimentSpec& e) {
  const double ext = extension_of(e);
  return make_grid(e.Lx + ext, e.Ly, e.h, e.cfl_number, c_max(e), -ext);
}

inline std::size_t step_count(const ExperimentSpec& e, const Grid& g) {
  return static_cast<std::size_t>(std::llround(e.T_final / g.tau));
}

/// Field on the truncated window at one time level.
struct Snapshot {
  std::size_t step = 0;
  double time = 0.0;
  Field2D u;
};

struct RunResult {
  Grid grid;                    // grid actually simulated
  std::size_t window_begin = 0; // first column of the truncated window
  std::vector<Snapshot> snapshots;
  double initial_max = 0.0;
  double final_max = 0.0;
};

namespace detail {

inline Field2D window_of(const Field2D& u, std::size_t begin, std::size_t width) {
  Field2D w(width, u.ny());
  for (std::size_t j = 0; j < width; ++j) {
    auto src = u.column(begin + j);
    std::copy(src.begin(), src.end(), w.column(j).begin());
  }
  return w;
}

}  // namespace detail

/// Steps one member of the pair to T_final and records snapshots of the
/// truncated window every `stride` steps (and at step 0 and the last step).
/// The truncated run uses the configured left boundary; the extended run uses
/// a hard wall that waves cannot reach.
inline RunResult run(const ExperimentSpec& e, bool truncated,
                     const std::function<void(const Snapshot&)>& on_snapshot = {}) {
  if (e.stride == 0) throw std::invalid_argument("snapshot stride must be positive");
  const Grid g = truncated ? truncated_grid(e) : extended_grid(e);
  const std::size_t width = truncated_grid(e).nx;
  const std::size_t begin = g.nx - width;
  const NodalSpeed speed(e.medium, g);

  WaveState s = e.initial                                  ? e.initial(g)
                : e.source_mode == SourceMode::PrePhase ? make_initial(g, e.source)
                                                        : WaveState(g);
  const bool inject = !e.initial && e.source_mode == SourceMode::Inject;
  const SourceFootprint fp =
      inject ? source_footprint(g, e.source.x_s, e.source.y_s) : SourceFootprint{};

  BoundarySpec left = truncated ? e.boundary : BoundarySpec{};
  left.side = Side::Left;
  BoundaryDriver driver(left, g, e.medium, s, e.flux);

  RunResult out;
  out.grid = g;
  out.window_begin = begin;
  out.initial_max = s.u_curr.max_abs();

  const std::size_t steps = step_count(e, g);
  auto record = [&] {
    if (!s.u_curr.all_finite()) throw InstabilityError(s.step_index(), s.u_curr.max_abs());
    Snapshot snap{s.step_index(), s.time(), detail::window_of(s.u_curr, begin, width)};
    if (on_snapshot) on_snapshot(snap);
    out.snapshots.push_back(std::move(snap));
  };
  record();

  for (std::size_t n = 0; n < steps; ++n) {
    step_interior(s, speed);
    apply_hard_wall(s, speed, {Side::Bottom, Side::Top, Side::Right});
    driver.apply(s, speed);
    if (inject) inject_source(s, speed, fp, e.source, g.h);
    s.advance();
    driver.record(s);

    const bool snap_due = s.step_index() % e.stride == 0 || s.step_index() == steps;
    if (snap_due) {
      record();
    } else if (s.step_index() % 64 == 0) {
      for (std::size_t l = 0; l < s.rows(); ++l)
        if (!std::isfinite(s.u_curr(begin, l)))
          throw InstabilityError(s.step_index(), s.u_curr.max_abs());
    }
  }
  out.final_max = s.u_curr.max_abs();
  return out;
}

/// Relative L1 error E(t) and max error e(t) of the truncated run against the
/// extended run, over the truncated window, at each snapshot time.
struct ErrorSeries {
  std::vector<double> times;
  std::vector<double> E;
  std::vector<double> e;
  std::vector<bool> valid;  // false where E has a zero denominator and nonzero numerator

  std::size_t size() const noexcept { return times.size(); }
};

inline ErrorSeries error_series(const std::vector<Snapshot>& truncated,
                                const std::vector<Snapshot>& extended) {
  if (truncated.size() != extended.size())
    throw std::invalid_argument("runs have different snapshot counts");
  ErrorSeries out;
  for (std::size_t i = 0; i < truncated.size(); ++i) {
    const Snapshot& a = truncated[i];
    const Snapshot& b = extended[i];
    if (a.step != b.step || !a.u.same_shape(b.u))
      throw std::invalid_argument("snapshot " + std::to_string(i) + " does not line up");
    double num = 0.0, den = 0.0, mx = 0.0;
    auto ua = a.u.values();
    auto ub = b.u.values();
    for (std::size_t k = 0; k < ua.size(); ++k) {
      const double d = std::abs(ua[k] - ub[k]);
      num += d;
      den += std::abs(ub[k]);
      mx = std::max(mx, d);
    }
    out.times.push_back(a.time);
    out.e.push_back(mx);
    if (den > 0.0) {
      out.E.push_back(num / den);
      out.valid.push_back(true);
    } else if (num == 0.0) {
      out.E.push_back(0.0);
      out.valid.push_back(true);
    } else {
      out.E.push_back(std::numeric_limits<double>::quiet_NaN());
      out.valid.push_back(false);
    }
  }
  return out;
}

inline ErrorSeries error_series(const RunResult& truncated, const RunResult& extended) {
  return error_series(truncated.snapshots, extended.snapshots);
}

struct PairResult {
  RunResult truncated;
  RunResult extended;
  ErrorSeries errors;
};

/// Runs both members of the pair concurrently.
inline PairResult run_pair(const ExperimentSpec& e) {
  auto ext = std::async(std::launch::async, [&e] { return run(e, false); });
  PairResult p;
  p.truncated = run(e, true);
  p.extended = ext.get();
  p.errors = error_series(p.truncated, p.extended);
  return p;
}

/// Earliest time any wave can touch the artificial boundary column pair:
/// source distance to x = 0 over c_max.
inline double first_arrival_time(const ExperimentSpec& e) {
  return e.source.x_s / c_max(e);
}

namespace detail {

inline ExperimentSpec base_experiment(std::string stem, SoundSpeedModel medium, double xs, double ys,
                                      double duration) {
  ExperimentSpec e;
  e.name = std::move(stem);
  e.source = {xs, ys, duration, 1.0, medium.speed(xs, ys), Waveform::ZeroMean};
  e.medium = std::move(medium);
  return e;
}

inline ExperimentSpec with_boundary(ExperimentSpec e, BoundaryKind kind, std::size_t order = 0) {
  e.boundary.side = Side::Left;
  e.boundary.kind = kind;
  e.boundary.order = order;
  e.boundary.speeds.clear();
  if (kind == BoundaryKind::Higdon) {
    const double cj = depth_average(e.medium, 0.0, e.Ly, e.h);
    e.boundary.speeds.assign(order, cj);
  }
  e.name += "-" + e.boundary.label();
  return e;
}

}  // namespace detail

/// The three waveguide experiments and a constant-speed control, each with
/// the Tappert, Higdon-2 and Higdon-3 left boundaries. Higdon speeds are the
/// depth mean of c on the artificial boundary. Sources use the zero-mean
/// waveform: a sin^2 source leaves a static plateau in a closed waveguide,
/// which the time-integrated Tappert term turns into a growing error.
inline std::vector<ExperimentSpec> experiment_catalog() {
  const double L = 10.0;
  std::vector<ExperimentSpec> bases = {
      detail::base_experiment("exp1", SoundSpeedModel::gaussian_duct(L), L / 2, L / 2, 1.4),
      detail::base_experiment("exp2", SoundSpeedModel::erf_step(L), L / 2, L / 2, 1.0),
      detail::base_experiment("exp3", SoundSpeedModel::range_gaussian(L), 0.75 * L, L / 2, 1.4),
      detail::base_experiment("const", SoundSpeedModel::constant(1.0), L / 2, L / 2, 1.0),
  };
  std::vector<ExperimentSpec> out;
  for (const auto& b : bases) {
    out.push_back(detail::with_boundary(b, BoundaryKind::Tappert));
    out.push_back(detail::with_boundary(b, BoundaryKind::Higdon, 2));
    out.push_back(detail::with_boundary(b, BoundaryKind::Higdon, 3));
  }
  return out;
}

inline ExperimentSpec find_experiment(const std::string& name) {
  for (auto& e : experiment_catalog())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

/// Replaces the left boundary, refilling Higdon speeds from the depth mean
/// when none are given.
inline ExperimentSpec retarget_boundary(ExperimentSpec e, BoundaryKind kind, std::size_t order,
                                        std::vector<double> speeds = {}) {
  const auto dash = e.name.find('-');
  if (dash != std::string::npos) e.name.resize(dash);
  e = detail::with_boundary(std::move(e), kind, order);
  if (!speeds.empty()) e.boundary.speeds = std::move(speeds);
  e.boundary.validate();
  return e;
}

}  // namespace wgabc
