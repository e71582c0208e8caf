#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "wgabc/harness.hpp"
#include "wgabc/io.hpp"

namespace wgabc {

struct TimingRow {
  std::string kind;
  double per_step_seconds = 0.0;  // median wall time of a whole step
  double boundary_seconds = 0.0;  // per_step minus the interior-only median
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

// Per-step wall times of `steps` full steps on the truncated grid.
inline std::vector<double> time_steps(const ExperimentSpec& e, std::size_t steps) {
  const Grid g = truncated_grid(e);
  const NodalSpeed speed(e.medium, g);
  WaveState s = make_initial(g, e.source);
  BoundaryDriver driver(e.boundary, g, e.medium, s, e.flux);
  std::vector<double> out;
  out.reserve(steps);
  for (std::size_t n = 0; n < steps; ++n) {
    const auto t0 = Clock::now();
    step_interior(s, speed);
    apply_hard_wall(s, speed, {Side::Bottom, Side::Top, Side::Right});
    driver.apply(s, speed);
    s.advance();
    driver.record(s);
    out.push_back(seconds_since(t0));
  }
  return out;
}

}  // namespace detail

/// Median per-step cost for the interior-only step and each left boundary
/// kind on the experiment's truncated grid.
inline std::vector<TimingRow> timing_report(const ExperimentSpec& base, std::size_t steps = 400) {
  struct Variant {
    std::string label;
    BoundaryKind kind;
    std::size_t order;
  };
  const std::vector<Variant> variants = {{"interior", BoundaryKind::HardWall, 0},
                                         {"tappert", BoundaryKind::Tappert, 0},
                                         {"higdon1", BoundaryKind::Higdon, 1},
                                         {"higdon2", BoundaryKind::Higdon, 2},
                                         {"higdon3", BoundaryKind::Higdon, 3}};
  std::vector<TimingRow> rows;
  double interior = 0.0;
  for (const auto& v : variants) {
    const ExperimentSpec e = retarget_boundary(base, v.kind, v.order);
    const double t = detail::median(detail::time_steps(e, steps));
    if (v.kind == BoundaryKind::HardWall) interior = t;
    rows.push_back({v.label, t, t - interior});
  }
  return rows;
}

inline std::string format_timing_csv(const std::vector<TimingRow>& rows) {
  std::ostringstream os;
  os << "kind,per_step_seconds\n";
  for (const auto& r : rows) os << r.kind << ',' << io::exact(r.per_step_seconds) << '\n';
  return os.str();
}

/// Wall time of the left-boundary work alone (apply + record) at every step
/// of a truncated run. apply() only reads earlier levels, so it is repeated
/// `apply_repeats` times per step to lift it above timer resolution.
inline std::vector<double> boundary_cost_profile(const ExperimentSpec& e, std::size_t steps,
                                                 std::size_t apply_repeats = 16) {
  const Grid g = truncated_grid(e);
  const NodalSpeed speed(e.medium, g);
  WaveState s = make_initial(g, e.source);
  BoundaryDriver driver(e.boundary, g, e.medium, s, e.flux);
  std::vector<double> cost;
  cost.reserve(steps);
  for (std::size_t n = 0; n < steps; ++n) {
    step_interior(s, speed);
    apply_hard_wall(s, speed, {Side::Bottom, Side::Top, Side::Right});
    auto t0 = detail::Clock::now();
    for (std::size_t r = 0; r < apply_repeats; ++r) driver.apply(s, speed);
    const double apply = detail::seconds_since(t0) / static_cast<double>(apply_repeats);
    s.advance();
    t0 = detail::Clock::now();
    driver.record(s);
    cost.push_back(apply + detail::seconds_since(t0));
  }
  return cost;
}

}  // namespace wgabc
