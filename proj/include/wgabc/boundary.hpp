#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgabc/higdon.hpp"
#include "wgabc/solver.hpp"
#include "wgabc/tappert.hpp"

namespace wgabc {

enum class BoundaryKind { HardWall, Tappert, Higdon };

inline const char* to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::HardWall: return "hardwall";
    case BoundaryKind::Tappert: return "tappert";
    case BoundaryKind::Higdon: return "higdon";
  }
  return "?";
}

inline BoundaryKind parse_boundary_kind(const std::string& s) {
  if (s == "hardwall" || s == "hard_wall") return BoundaryKind::HardWall;
  if (s == "tappert") return BoundaryKind::Tappert;
  if (s == "higdon") return BoundaryKind::Higdon;
  throw std::invalid_argument("unknown boundary kind '" + s + "'");
}

/// Condition on one vertical side.
struct BoundarySpec {
  Side side = Side::Left;
  BoundaryKind kind = BoundaryKind::HardWall;
  std::size_t order = 0;       // Higdon J
  std::vector<double> speeds;  // Higdon C_j

  void validate() const {
    if (side != Side::Left && side != Side::Right)
      throw std::invalid_argument("boundary conditions are configured on the left or right side");
    if (kind != BoundaryKind::Higdon) return;
    if (order == 0) throw std::invalid_argument("Higdon order J must be at least 1");
    if (speeds.size() != order)
      throw std::invalid_argument("Higdon speeds list must have J entries");
    for (double c : speeds)
      if (!(c > 0.0)) throw std::invalid_argument("Higdon speeds must be positive");
  }

  std::string label() const {
    if (kind == BoundaryKind::Higdon) return "higdon" + std::to_string(order);
    return to_string(kind);
  }
};

/// Runtime owner of one side's boundary machinery.
class BoundaryDriver {
public:
  BoundaryDriver(const BoundarySpec& spec, const Grid& grid, const SoundSpeedModel& model,
                 const WaveState& s, TappertFlux flux = TappertFlux::Conservative)
      : spec_(spec) {
    spec.validate();
    switch (spec.kind) {
      case BoundaryKind::HardWall: break;
      case BoundaryKind::Tappert:
        tappert_ = tappert_init(grid, model, spec.side, flux, s.step_index());
        break;
      case BoundaryKind::Higdon:
        stencil_ = higdon_stencil(spec.order, spec.speeds, grid.tau, grid.h, spec.side);
        history_.emplace(s, spec.order, spec.side);
        break;
    }
  }

  const BoundarySpec& spec() const noexcept { return spec_; }
  const TappertState* tappert() const noexcept { return tappert_ ? &*tappert_ : nullptr; }

  /// Fills the side's column of u_next. Must run after the wall rows.
  void apply(WaveState& s, const NodalSpeed& speed) const {
    switch (spec_.kind) {
      case BoundaryKind::HardWall: apply_hard_wall(s, speed, {spec_.side}); break;
      case BoundaryKind::Tappert: tappert_apply(s, *tappert_); break;
      case BoundaryKind::Higdon: higdon_apply(s, stencil_, *history_); break;
    }
  }

  /// Bookkeeping after advance().
  void record(const WaveState& s) {
    if (tappert_) tappert_accumulate(*tappert_, s);
    if (history_) history_->push(s);
  }

private:
  BoundarySpec spec_;
  std::optional<TappertState> tappert_;
  HigdonStencil stencil_;
  std::optional<HigdonHistory> history_;
};

}  // namespace wgabc
