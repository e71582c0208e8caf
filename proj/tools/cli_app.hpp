#pragma once

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "wgabc/wgabc.hpp"

namespace wgabc::cli {

namespace fs = std::filesystem;

struct Options {
  std::string command;
  std::string experiment;  // optional positional shortcut for `experiment = ...`
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
};

inline RunConfig load(const Options& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : parse_config_file(o.config_path);
  if (!o.experiment.empty()) c.experiment = o.experiment;
  for (const auto& kv : o.overrides) apply_override(c, kv);
  if (!o.out_dir.empty()) c.output_dir = o.out_dir;
  return c;
}

inline fs::path prepare_output(const RunConfig& c) {
  const fs::path dir = c.output_dir.empty() ? fs::path(".") : fs::path(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ConfigError("output.dir", "cannot create directory '" + dir.string() + "'");
  return dir;
}

inline std::string snapshot_name(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06zu.txt", step);
  return buf;
}

inline void do_list(std::ostream& out) {
  for (const auto& e : experiment_catalog()) {
    out << std::left << std::setw(16) << e.name << ' ' << std::setw(15) << e.medium.kind_name()
        << " source (" << e.source.x_s << ", " << e.source.y_s << ") d=" << e.source.duration;
    if (e.boundary.kind == BoundaryKind::Higdon) out << " C=" << e.boundary.speeds.front();
    out << '\n';
  }
}

inline void do_run(const RunConfig& c, std::ostream& out) {
  const ExperimentSpec e = resolve(c);
  const fs::path dir = prepare_output(c);
  std::size_t files = 0;
  const RunResult r = run(e, true, [&](const Snapshot& s) {
    io::write_snapshot(dir / snapshot_name(s.step), s.u, s.time);
    ++files;
  });
  out << e.name << ": " << r.snapshots.back().step << " steps, tau = " << r.grid.tau
      << ", max|u| " << r.initial_max << " -> " << r.final_max << ", " << files
      << " snapshots in " << dir.string() << '\n';
}

inline void do_compare(const RunConfig& c, std::ostream& out) {
  const ExperimentSpec e = resolve(c);
  const fs::path dir = prepare_output(c);
  const PairResult p = run_pair(e);
  io::write_errors_csv(dir / "errors.csv", p.errors);
  const std::size_t last = p.errors.size() - 1;
  out << e.name << ": t = " << p.errors.times[last] << "  E = "
      << (p.errors.valid[last] ? io::exact(p.errors.E[last]) : std::string("nan"))
      << "  e = " << io::exact(p.errors.e[last]) << "  -> " << (dir / "errors.csv").string() << '\n';
}

inline void do_bench(const RunConfig& c, std::ostream& out) {
  const ExperimentSpec e = resolve(c);
  const fs::path dir = prepare_output(c);
  const auto rows = timing_report(e);
  io::write_atomic(dir / "timing.csv", format_timing_csv(rows));
  for (const auto& r : rows)
    out << std::left << std::setw(10) << r.kind << ' ' << std::scientific << std::setprecision(3)
        << r.per_step_seconds << " s/step  (boundary " << r.boundary_seconds << ")\n"
        << std::defaultfloat;
}

/// Entry point shared by the executable and the tests. Returns the exit code.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"FDTD waveguide solver with artificial boundary conditions"};
  app.require_subcommand(1, 1);
  Options o;
  const std::pair<const char*, const char*> commands[] = {
      {"list", "print the experiment catalog"},
      {"run", "run the truncated domain and write field snapshots"},
      {"compare", "run truncated and extended domains and write errors.csv"},
      {"bench", "time the boundary kinds and write timing.csv"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (std::string(name) == "list") continue;
    sub->add_option("experiment", o.experiment, "catalog experiment (overrides the config)");
    sub->add_option("--config", o.config_path, "key = value config file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_option("--override", o.overrides, "key=value, applied after the config")
        ->allow_extra_args(false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    if (o.command == "list") {
      do_list(out);
      return 0;
    }
    if (o.config_path.empty() && o.experiment.empty())
      throw ConfigError("experiment", "give --config or an experiment name");
    const RunConfig c = load(o);
    if (o.command == "run") do_run(c, out);
    else if (o.command == "compare") do_compare(c, out);
    else do_bench(c, out);
    return 0;
  } catch (const InstabilityError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace wgabc::cli
