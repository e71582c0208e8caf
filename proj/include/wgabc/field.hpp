#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace wgabc {

// Column-major 2D array: (j, l) with j the x (range) index and l the y (depth)
// index. Storage is y-fastest, which is also the on-disk snapshot order.
class Field2D {
public:
  Field2D() = default;
  Field2D(std::size_t nx, std::size_t ny, double value = 0.0)
      : nx_(nx), ny_(ny), data_(nx * ny, value) {}

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t j, std::size_t l) noexcept {
    assert(j < nx_ && l < ny_);
    return data_[j * ny_ + l];
  }
  double operator()(std::size_t j, std::size_t l) const noexcept {
    assert(j < nx_ && l < ny_);
    return data_[j * ny_ + l];
  }

  std::span<double> column(std::size_t j) noexcept { return {data_.data() + j * ny_, ny_}; }
  std::span<const double> column(std::size_t j) const noexcept {
    return {data_.data() + j * ny_, ny_};
  }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
  }

  bool same_shape(const Field2D& o) const noexcept { return nx_ == o.nx_ && ny_ == o.ny_; }

  friend bool operator==(const Field2D&, const Field2D&) = default;

private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<double> data_;
};

}  // namespace wgabc
