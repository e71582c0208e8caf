#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wgabc/boundary.hpp"
#include "wgabc/harness.hpp"
#include "wgabc/medium.hpp"

namespace wgabc {

/// Error in a configuration entry. `key()` names the offending key.
class ConfigError : public std::invalid_argument {
public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument("config key '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

/// Fully resolved run configuration. Only set entries override the chosen
/// experiment; everything else falls back to the defaults below.
struct RunConfig {
  std::string experiment;  // catalog name, or empty for an inline medium

  // inline experiment
  std::string medium_kind;
  double medium_c = 1.0;
  std::string medium_table;
  std::optional<double> source_x, source_y, source_duration, source_amplitude;
  std::optional<Waveform> source_waveform;
  double Lx = 10.0;
  double Ly = 10.0;

  std::optional<BoundaryKind> boundary_kind;
  std::optional<std::size_t> boundary_J;
  std::vector<double> boundary_speeds;

  double h = 0.1;
  double cfl_number = 0.9;
  double T_final = 20.0;
  double extension = 0.0;

  std::string output_dir = ".";
  std::size_t stride = 10;

  bool literal_flux = false;
  SourceMode source_mode = SourceMode::PrePhase;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw ConfigError(key, "expected a number, got '" + v + "'");
  return out;
}

inline std::size_t to_count(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw ConfigError(key, "expected an integer, got '" + v + "'");
  if (out < 0) throw ConfigError(key, "must not be negative");
  return static_cast<std::size_t>(out);
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

inline double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(key, "must be positive");
  return v;
}

}  // namespace detail

/// Applies one `key = value` entry. Unknown keys are rejected.
inline void set_config_key(RunConfig& c, const std::string& key, const std::string& value) {
  using namespace detail;
  if (key == "experiment") c.experiment = value;
  else if (key == "medium.kind") c.medium_kind = value;
  else if (key == "medium.c") c.medium_c = positive(key, to_double(key, value));
  else if (key == "medium.table") c.medium_table = value;
  else if (key == "source.x") c.source_x = to_double(key, value);
  else if (key == "source.y") c.source_y = to_double(key, value);
  else if (key == "source.duration") c.source_duration = positive(key, to_double(key, value));
  else if (key == "source.amplitude") c.source_amplitude = to_double(key, value);
  else if (key == "source.waveform") {
    if (value == "sin2") c.source_waveform = Waveform::Sin2;
    else if (value == "zero_mean") c.source_waveform = Waveform::ZeroMean;
    else throw ConfigError(key, "expected sin2 or zero_mean, got '" + value + "'");
  } else if (key == "domain.Lx") c.Lx = positive(key, to_double(key, value));
  else if (key == "domain.Ly") c.Ly = positive(key, to_double(key, value));
  else if (key == "boundary.kind") {
    try {
      c.boundary_kind = parse_boundary_kind(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key, e.what());
    }
  } else if (key == "boundary.J") {
    c.boundary_J = to_count(key, value);
    if (*c.boundary_J == 0) throw ConfigError(key, "Higdon order must be at least 1");
  } else if (key == "boundary.speeds") {
    c.boundary_speeds.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      c.boundary_speeds.push_back(positive(key, to_double(key, trim(item))));
  } else if (key == "grid.h") c.h = positive(key, to_double(key, value));
  else if (key == "grid.cfl_number") {
    c.cfl_number = to_double(key, value);
    if (!(c.cfl_number > 0.0 && c.cfl_number <= 1.0)) throw ConfigError(key, "must lie in (0, 1]");
  } else if (key == "grid.T_final") {
    c.T_final = to_double(key, value);
    if (!(c.T_final >= 0.0)) throw ConfigError(key, "must not be negative");
  } else if (key == "grid.extension") {
    c.extension = to_double(key, value);
    if (!(c.extension >= 0.0)) throw ConfigError(key, "must not be negative");
  } else if (key == "output.dir") c.output_dir = value;
  else if (key == "output.stride") {
    c.stride = to_count(key, value);
    if (c.stride == 0) throw ConfigError(key, "must be at least 1");
  } else if (key == "flags.literal_flux") c.literal_flux = to_bool(key, value);
  else if (key == "flags.source_mode") {
    if (value == "prephase") c.source_mode = SourceMode::PrePhase;
    else if (value == "inject") c.source_mode = SourceMode::Inject;
    else throw ConfigError(key, "expected prephase or inject, got '" + value + "'");
  } else {
    throw ConfigError(key, "unknown key");
  }
}

/// Applies `key=value`, as given on the command line.
inline void apply_override(RunConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError(detail::trim(assignment), "override must have the form key=value");
  set_config_key(c, detail::trim(assignment.substr(0, eq)), detail::trim(assignment.substr(eq + 1)));
}

/// Parses flat `key = value` lines; `#` starts a comment.
inline RunConfig parse_config(std::istream& in, RunConfig base = {}) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(t, "line " + std::to_string(lineno) + " is not of the form key = value");
    set_config_key(base, detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
  }
  return base;
}

inline RunConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse_config(in);
}

namespace detail {

inline ExperimentSpec inline_experiment(const RunConfig& c) {
  ExperimentSpec e;
  e.name = "custom";
  e.Lx = c.Lx;
  e.Ly = c.Ly;
  if (c.medium_kind == "constant") e.medium = SoundSpeedModel::constant(c.medium_c);
  else if (c.medium_kind == "gaussian_duct") e.medium = SoundSpeedModel::gaussian_duct(c.Ly);
  else if (c.medium_kind == "erf_step") e.medium = SoundSpeedModel::erf_step(c.Ly);
  else if (c.medium_kind == "range_gaussian") e.medium = SoundSpeedModel::range_gaussian(c.Lx);
  else if (c.medium_kind == "tabulated") {
    if (c.medium_table.empty()) throw ConfigError("medium.table", "required for a tabulated medium");
    e.medium = load_tabulated(c.medium_table);
  } else {
    throw ConfigError("medium.kind", "unknown medium '" + c.medium_kind + "'");
  }
  e.source.x_s = c.source_x.value_or(c.Lx / 2);
  e.source.y_s = c.source_y.value_or(c.Ly / 2);
  e.source.duration = c.source_duration.value_or(1.0);
  e.source.waveform = Waveform::ZeroMean;
  e.boundary.kind = BoundaryKind::Tappert;
  return e;
}

}  // namespace detail

/// Builds the experiment a config describes: the catalog entry (or inline
/// medium) with the config's overrides. Higdon speeds default to the depth
/// mean of c on the artificial boundary.
inline ExperimentSpec resolve(const RunConfig& c) {
  ExperimentSpec e;
  if (!c.experiment.empty()) {
    try {
      e = find_experiment(c.experiment);
    } catch (const std::invalid_argument& err) {
      throw ConfigError("experiment", err.what());
    }
    if (!c.medium_kind.empty()) throw ConfigError("medium.kind", "cannot be combined with experiment");
  } else if (!c.medium_kind.empty()) {
    e = detail::inline_experiment(c);
  } else {
    throw ConfigError("experiment", "missing; name a catalog experiment or set medium.kind");
  }

  if (c.source_x) e.source.x_s = *c.source_x;
  if (c.source_y) e.source.y_s = *c.source_y;
  if (c.source_duration) e.source.duration = *c.source_duration;
  if (c.source_amplitude) e.source.amplitude = *c.source_amplitude;
  if (c.source_waveform) e.source.waveform = *c.source_waveform;
  try {
    e.source.c0 = e.medium.speed(e.source.x_s, e.source.y_s);
  } catch (const std::domain_error& err) {
    throw ConfigError("source.x", err.what());
  }

  e.h = c.h;
  e.cfl_number = c.cfl_number;
  e.T_final = c.T_final;
  e.extension = c.extension;
  e.stride = c.stride;
  e.flux = c.literal_flux ? TappertFlux::Literal : TappertFlux::Conservative;
  e.source_mode = c.source_mode;

  const BoundaryKind kind = c.boundary_kind.value_or(e.boundary.kind);
  if (kind != BoundaryKind::Higdon && (c.boundary_J || !c.boundary_speeds.empty()))
    throw ConfigError(c.boundary_J ? "boundary.J" : "boundary.speeds",
                      "only applies to boundary.kind = higdon");
  std::size_t order = kind == BoundaryKind::Higdon ? c.boundary_J.value_or(e.boundary.order) : 0;
  if (kind == BoundaryKind::Higdon && order == 0) order = c.boundary_speeds.empty() ? 2 : c.boundary_speeds.size();
  if (!c.boundary_speeds.empty() && c.boundary_speeds.size() != order)
    throw ConfigError("boundary.speeds", "needs exactly J = " + std::to_string(order) + " entries");
  // speeds are recomputed so an overridden h is honoured
  return retarget_boundary(std::move(e), kind, order, c.boundary_speeds);
}

}  // namespace wgabc
