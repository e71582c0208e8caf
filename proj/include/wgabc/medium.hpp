#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace wgabc {

/// Sound speed and its first two depth derivatives at one point.
struct SpeedSample {
  double c = 1.0;
  double c_y = 0.0;
  double c_yy = 0.0;
};

namespace profile {

struct Constant {
  double c = 1.0;
};

/// Sound channel with its minimum on the axis y = Ly/2:
/// c(y) = base - amplitude * exp(-(y - Ly/2)^2 / width).
struct GaussianDuct {
  double Ly = 10.0;
  double base = 1.0;
  double amplitude = 0.5;
  double width = 3.0;
};

/// Smooth step from `top` (deep negative y) down to `top - drop`:
/// c(y) = top - drop/sqrt(pi) * int_{-inf}^{y} exp(-(s - center)^2) ds.
struct ErfStep {
  double Ly = 10.0;
  double top = 4.0;
  double drop = 3.0;
  double center = 2.0;  // Ly / 5
};

/// Range-dependent speed with a slow region around x = center:
/// c(x) = base - amplitude * exp(-(x - center)^2 / width).
struct RangeGaussian {
  double Lx = 10.0;
  double base = 1.0;
  double amplitude = 0.5;
  double width = 3.0;
  double center = 7.0;  // 0.7 Lx
};

/// Sampled c on a regular (x, y) lattice. Values are y-fastest.
/// Nodal depth derivatives are precomputed with second-order differences.
struct Tabulated {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 1.0;
  double dy = 1.0;
  std::vector<double> c;
  std::vector<double> c_y;
  std::vector<double> c_yy;

  double x_end() const { return x0 + dx * static_cast<double>(nx - 1); }
  double y_end() const { return y0 + dy * static_cast<double>(ny - 1); }
};

}  // namespace profile

/// Immutable description of c(x, y). Safe to share across threads.
class SoundSpeedModel {
public:
  using Kind = std::variant<profile::Constant, profile::GaussianDuct, profile::ErfStep,
                            profile::RangeGaussian, profile::Tabulated>;

  SoundSpeedModel() : kind_(profile::Constant{}) {}

  static SoundSpeedModel constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("constant sound speed must be positive");
    return SoundSpeedModel(profile::Constant{c});
  }
  static SoundSpeedModel gaussian_duct(double Ly) { return SoundSpeedModel(profile::GaussianDuct{Ly}); }
  static SoundSpeedModel erf_step(double Ly) {
    profile::ErfStep p;
    p.Ly = Ly;
    p.center = Ly / 5.0;
    return SoundSpeedModel(p);
  }
  static SoundSpeedModel range_gaussian(double Lx) {
    profile::RangeGaussian p;
    p.Lx = Lx;
    p.center = 0.7 * Lx;
    return SoundSpeedModel(p);
  }
  static SoundSpeedModel tabulated(std::size_t nx, std::size_t ny, double x0, double y0, double dx,
                                   double dy, std::vector<double> values);

  const Kind& kind() const noexcept { return kind_; }

  std::string kind_name() const {
    return std::visit(
        [](const auto& p) -> std::string {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, profile::Constant>) return "constant";
          else if constexpr (std::is_same_v<T, profile::GaussianDuct>) return "gaussian_duct";
          else if constexpr (std::is_same_v<T, profile::ErfStep>) return "erf_step";
          else if constexpr (std::is_same_v<T, profile::RangeGaussian>) return "range_gaussian";
          else return "tabulated";
        },
        kind_);
  }

  /// c, c_y, c_yy at (x, y). Throws std::domain_error outside a table.
  SpeedSample eval(double x, double y) const;

  double speed(double x, double y) const { return eval(x, y).c; }

  /// Supremum of c over the model's domain; used for the CFL time step.
  double c_max() const;

private:
  explicit SoundSpeedModel(Kind k) : kind_(std::move(k)) {}

  Kind kind_;
};

namespace detail {

inline SpeedSample eval_profile(const profile::Constant& p, double, double) { return {p.c, 0.0, 0.0}; }

inline SpeedSample eval_profile(const profile::GaussianDuct& p, double, double y) {
  const double s = y - 0.5 * p.Ly;
  const double g = p.amplitude * std::exp(-s * s / p.width);
  return {p.base - g, g * 2.0 * s / p.width,
          g * (2.0 / p.width - 4.0 * s * s / (p.width * p.width))};
}

inline SpeedSample eval_profile(const profile::ErfStep& p, double, double y) {
  const double s = y - p.center;
  const double g = p.drop / std::sqrt(std::numbers::pi) * std::exp(-s * s);
  // int_{-inf}^{y} exp(-(t - center)^2) dt = sqrt(pi)/2 * erfc(-(y - center))
  return {p.top - 0.5 * p.drop * std::erfc(-s), -g, 2.0 * s * g};
}

inline SpeedSample eval_profile(const profile::RangeGaussian& p, double x, double) {
  const double s = x - p.center;
  return {p.base - p.amplitude * std::exp(-s * s / p.width), 0.0, 0.0};
}

inline SpeedSample eval_profile(const profile::Tabulated& t, double x, double y) {
  const double tol_x = 1e-9 * t.dx;
  const double tol_y = 1e-9 * t.dy;
  if (x < t.x0 - tol_x || x > t.x_end() + tol_x || y < t.y0 - tol_y || y > t.y_end() + tol_y)
    throw std::domain_error("point (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") lies outside the sound-speed table");

  auto locate = [](double q, double origin, double step, std::size_t n) {
    double f = (q - origin) / step;
    f = std::clamp(f, 0.0, static_cast<double>(n - 1));
    auto i = static_cast<std::size_t>(std::floor(f));
    if (i + 1 >= n) i = n >= 2 ? n - 2 : 0;
    return std::pair{i, f - static_cast<double>(i)};
  };
  const auto [i, fx] = locate(x, t.x0, t.dx, t.nx);
  const auto [k, fy] = locate(y, t.y0, t.dy, t.ny);
  const std::size_t i1 = std::min(i + 1, t.nx - 1);
  const std::size_t k1 = std::min(k + 1, t.ny - 1);

  auto bilinear = [&](const std::vector<double>& v) {
    const double v00 = v[i * t.ny + k], v01 = v[i * t.ny + k1];
    const double v10 = v[i1 * t.ny + k], v11 = v[i1 * t.ny + k1];
    return (1 - fx) * ((1 - fy) * v00 + fy * v01) + fx * ((1 - fy) * v10 + fy * v11);
  };
  return {bilinear(t.c), bilinear(t.c_y), bilinear(t.c_yy)};
}

}  // namespace detail

inline SpeedSample SoundSpeedModel::eval(double x, double y) const {
  return std::visit([&](const auto& p) { return detail::eval_profile(p, x, y); }, kind_);
}

inline double SoundSpeedModel::c_max() const {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, profile::Constant>) return p.c;
        else if constexpr (std::is_same_v<T, profile::ErfStep>) return p.top;
        else if constexpr (std::is_same_v<T, profile::Tabulated>)
          return *std::max_element(p.c.begin(), p.c.end());
        else return p.amplitude > 0.0 ? p.base : p.base - p.amplitude;
      },
      kind_);
}

inline SoundSpeedModel SoundSpeedModel::tabulated(std::size_t nx, std::size_t ny, double x0, double y0,
                                                  double dx, double dy, std::vector<double> values) {
  if (nx < 2 || ny < 4) throw std::invalid_argument("sound-speed table needs nx >= 2 and ny >= 4");
  if (!(dx > 0.0) || !(dy > 0.0)) throw std::invalid_argument("sound-speed table steps must be positive");
  if (values.size() != nx * ny)
    throw std::invalid_argument("sound-speed table has " + std::to_string(values.size()) +
                                " values, expected " + std::to_string(nx * ny));
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("sound-speed table contains a non-positive value");

  profile::Tabulated t{nx, ny, x0, y0, dx, dy, std::move(values), {}, {}};
  t.c_y.resize(nx * ny);
  t.c_yy.resize(nx * ny);
  const double h = dy;
  for (std::size_t i = 0; i < nx; ++i) {
    const double* f = t.c.data() + i * ny;
    double* d1 = t.c_y.data() + i * ny;
    double* d2 = t.c_yy.data() + i * ny;
    for (std::size_t k = 1; k + 1 < ny; ++k) {
      d1[k] = (f[k + 1] - f[k - 1]) / (2 * h);
      d2[k] = (f[k + 1] - 2 * f[k] + f[k - 1]) / (h * h);
    }
    // one-sided second-order stencils at the table edges
    const std::size_t n = ny - 1;
    d1[0] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * h);
    d1[n] = (3 * f[n] - 4 * f[n - 1] + f[n - 2]) / (2 * h);
    d2[0] = (2 * f[0] - 5 * f[1] + 4 * f[2] - f[3]) / (h * h);
    d2[n] = (2 * f[n] - 5 * f[n - 1] + 4 * f[n - 2] - f[n - 3]) / (h * h);
  }
  return SoundSpeedModel(std::move(t));
}

/// Reads a table: header `nx ny x0 y0 dx dy`, then nx*ny values, y fastest.
inline SoundSpeedModel read_tabulated(std::istream& in) {
  std::size_t nx = 0, ny = 0;
  double x0 = 0, y0 = 0, dx = 0, dy = 0;
  if (!(in >> nx >> ny >> x0 >> y0 >> dx >> dy))
    throw std::invalid_argument("malformed sound-speed table header");
  std::vector<double> values;
  values.reserve(nx * ny);
  double v = 0;
  while (values.size() < nx * ny && in >> v) values.push_back(v);
  if (values.size() != nx * ny)
    throw std::invalid_argument("sound-speed table truncated: read " + std::to_string(values.size()) +
                                " of " + std::to_string(nx * ny) + " values");
  return SoundSpeedModel::tabulated(nx, ny, x0, y0, dx, dy, std::move(values));
}

inline SoundSpeedModel load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sound-speed table '" + path + "'");
  return read_tabulated(in);
}

/// Samples any model onto a table with the given lattice.
inline SoundSpeedModel sample_to_table(const SoundSpeedModel& m, std::size_t nx, std::size_t ny,
                                       double x0, double y0, double dx, double dy) {
  std::vector<double> v(nx * ny);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t k = 0; k < ny; ++k)
      v[i * ny + k] = m.speed(x0 + dx * static_cast<double>(i), y0 + dy * static_cast<double>(k));
  return SoundSpeedModel::tabulated(nx, ny, x0, y0, dx, dy, std::move(v));
}

/// Depth mean (1/Ly) int_0^Ly c(x, y) dy by the composite trapezoid rule with
/// step no larger than h/10.
inline double depth_average(const SoundSpeedModel& m, double x, double Ly, double h = 0.1) {
  if (!(Ly > 0.0) || !(h > 0.0)) throw std::invalid_argument("depth_average needs Ly > 0 and h > 0");
  const auto n = static_cast<std::size_t>(std::ceil(Ly / (h / 10.0) - 1e-9));
  const double step = Ly / static_cast<double>(n);
  double sum = 0.5 * (m.speed(x, 0.0) + m.speed(x, Ly));
  for (std::size_t k = 1; k < n; ++k) sum += m.speed(x, step * static_cast<double>(k));
  return sum * step / Ly;
}

}  // namespace wgabc
