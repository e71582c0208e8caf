#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "wgabc/field.hpp"
#include "wgabc/harness.hpp"

namespace wgabc::io {

/// Shortest decimal that reads back to the same double.
inline std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Writes `content` to `path` through a sibling temp file and a rename, so the
/// file is either complete or absent.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move '" + tmp + "' into place: " + ec.message());
  }
}

/// Snapshot text: `nx ny t`, then nx*ny values, y fastest, one column per line.
inline std::string format_snapshot(const Field2D& u, double t) {
  std::ostringstream os;
  os << u.nx() << ' ' << u.ny() << ' ' << exact(t) << '\n';
  for (std::size_t j = 0; j < u.nx(); ++j) {
    const auto col = u.column(j);
    for (std::size_t l = 0; l < col.size(); ++l) os << (l ? " " : "") << exact(col[l]);
    os << '\n';
  }
  return os.str();
}

inline void write_snapshot(const std::filesystem::path& path, const Field2D& u, double t) {
  write_atomic(path, format_snapshot(u, t));
}

inline std::pair<Field2D, double> read_snapshot(std::istream& in) {
  std::size_t nx = 0, ny = 0;
  double t = 0.0;
  if (!(in >> nx >> ny >> t)) throw std::runtime_error("malformed snapshot header");
  Field2D u(nx, ny);
  for (auto& v : u.values())
    if (!(in >> v)) throw std::runtime_error("snapshot truncated");
  return {std::move(u), t};
}

inline std::pair<Field2D, double> read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open snapshot '" + path.string() + "'");
  return read_snapshot(in);
}

/// `t,E,e` with full round-trip precision; invalid E samples are written as nan.
inline std::string format_errors_csv(const ErrorSeries& s) {
  std::ostringstream os;
  os << "t,E,e\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    os << exact(s.times[i]) << ',' << (s.valid[i] ? exact(s.E[i]) : std::string("nan")) << ','
       << exact(s.e[i]) << '\n';
  return os.str();
}

inline void write_errors_csv(const std::filesystem::path& path, const ErrorSeries& s) {
  write_atomic(path, format_errors_csv(s));
}

}  // namespace wgabc::io
