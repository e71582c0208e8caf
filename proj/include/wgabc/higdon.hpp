#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgabc/errors.hpp"
#include "wgabc/field.hpp"
#include "wgabc/solver.hpp"

namespace wgabc {

/// Fully expanded discrete Higdon operator
///   prod_j [ (1 - S_t)/tau - C_j (S_in - 1)/h ]
/// where S_t steps one level back in time and S_in one column inward. The
/// weight w(m, k) multiplies u^{n+1-m} at the column k cells inside the
/// boundary; w(0, 0) is the pivot.
struct HigdonStencil {
  Side side = Side::Left;
  std::size_t order = 0;
  std::vector<double> weights;  // (order+1) x (order+1), time lag major

  std::size_t extent() const noexcept { return order + 1; }
  double w(std::size_t m, std::size_t k) const noexcept { return weights[m * extent() + k]; }
  double pivot() const noexcept { return weights[0]; }
};

inline HigdonStencil higdon_stencil(std::size_t order, std::span<const double> speeds, double tau,
                                    double h, Side side) {
  if (order == 0) throw std::invalid_argument("Higdon order J must be at least 1");
  if (speeds.size() != order)
    throw std::invalid_argument("Higdon order " + std::to_string(order) + " needs " +
                                std::to_string(order) + " speeds, got " +
                                std::to_string(speeds.size()));
  for (double c : speeds)
    if (!(c > 0.0)) throw std::invalid_argument("Higdon speeds must be positive");
  if (!(tau > 0.0) || !(h > 0.0)) throw std::invalid_argument("Higdon steps must be positive");
  if (side != Side::Left && side != Side::Right)
    throw std::invalid_argument("Higdon conditions are only defined on the left or right side");

  // Polynomial in (S_t, S_in), grown one factor at a time.
  const std::size_t n = order + 1;
  std::vector<double> poly(n * n, 0.0), next(n * n);
  poly[0] = 1.0;
  for (std::size_t f = 0; f < order; ++f) {
    const double c = speeds[f];
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t m = 0; m <= f; ++m)
      for (std::size_t k = 0; k <= f; ++k) {
        const double p = poly[m * n + k];
        if (p == 0.0) continue;
        next[m * n + k] += p * (1.0 / tau + c / h);
        next[(m + 1) * n + k] -= p / tau;
        next[m * n + k + 1] -= p * c / h;
      }
    poly.swap(next);
  }
  return HigdonStencil{side, order, std::move(poly)};
}

/// The last `order` time levels of the `order + 1` columns nearest the
/// boundary. Slab 0 is the current level.
class HigdonHistory {
public:
  HigdonHistory() = default;

  /// Starts from the state's current and previous levels; older levels are
  /// zero since the field vanishes before the start.
  HigdonHistory(const WaveState& s, std::size_t order, Side side)
      : side_(side), order_(order), synced_step_(s.step_index()) {
    if (order == 0) throw std::invalid_argument("Higdon order J must be at least 1");
    if (s.nx() < order + 3)
      throw std::invalid_argument("grid has too few columns for a Higdon condition of order " +
                                  std::to_string(order));
    slabs_.assign(order, Field2D(order + 1, s.rows()));
    copy_level(s.u_curr, slabs_[0]);
    if (order >= 2) copy_level(s.u_prev, slabs_[1]);
  }

  Side side() const noexcept { return side_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t synced_step() const noexcept { return synced_step_; }

  /// Field at `lag` levels before the current one, column k inward.
  double at(std::size_t lag, std::size_t k, std::size_t l) const { return slabs_[lag](k, l); }

  /// Records the level produced by advance().
  void push(const WaveState& s) {
    if (s.step_index() != synced_step_ + 1)
      throw ContractViolation("Higdon history is at step " + std::to_string(synced_step_) +
                              " but the field is at step " + std::to_string(s.step_index()));
    std::rotate(slabs_.begin(), slabs_.end() - 1, slabs_.end());
    copy_level(s.u_curr, slabs_[0]);
    synced_step_ = s.step_index();
  }

  std::size_t column(std::size_t k, std::size_t nx) const {
    return side_ == Side::Left ? k : nx - 1 - k;
  }

private:
  void copy_level(const Field2D& u, Field2D& slab) const {
    for (std::size_t k = 0; k < slab.nx(); ++k) {
      auto src = u.column(column(k, u.nx()));
      std::copy(src.begin(), src.end(), slab.column(k).begin());
    }
  }

  Side side_ = Side::Left;
  std::size_t order_ = 0;
  std::size_t synced_step_ = 0;
  std::vector<Field2D> slabs_;
};

/// Sum of w(m, k) * values(m, k); zero when the samples satisfy the discrete
/// condition exactly.
template <class Sample>
double higdon_residual(const HigdonStencil& st, Sample&& values) {
  double r = 0.0;
  for (std::size_t m = 0; m < st.extent(); ++m)
    for (std::size_t k = 0; k < st.extent(); ++k) r += st.w(m, k) * values(m, k);
  return r;
}

/// Solves each row of the boundary column of u_next independently.
inline void higdon_apply(WaveState& s, const HigdonStencil& st, const HigdonHistory& hist) {
  if (hist.order() < st.order)
    throw ContractViolation("Higdon history keeps " + std::to_string(hist.order()) +
                            " levels, stencil of order " + std::to_string(st.order) + " needs " +
                            std::to_string(st.order));
  if (hist.side() != st.side) throw ContractViolation("Higdon history and stencil sides differ");
  if (hist.synced_step() != s.step_index())
    throw ContractViolation("Higdon history is at step " + std::to_string(hist.synced_step()) +
                            ", field at step " + std::to_string(s.step_index()));
  if (!s.interior_ready() || !s.side_ready(Side::Bottom) || !s.side_ready(Side::Top))
    throw ContractViolation("higdon_apply needs the interior and wall rows of u_next first");

  const std::size_t n = st.extent(), nx = s.nx();
  const std::size_t b = hist.column(0, nx);
  for (std::size_t l = 0; l < s.rows(); ++l) {
    double sum = 0.0;
    for (std::size_t k = 1; k < n; ++k) sum += st.w(0, k) * s.u_next(hist.column(k, nx), l);
    for (std::size_t m = 1; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) sum += st.w(m, k) * hist.at(m - 1, k, l);
    s.u_next(b, l) = -sum / st.pivot();
  }
  s.mark_side(st.side);
}

}  // namespace wgabc
