#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wgabc {

/// Raised when an operation is called out of its required order, e.g. a
/// boundary accumulator updated twice for one time step.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Raised when a simulation or source setup cannot be carried out with the
/// requested parameters.
class ConfigurationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when the field blows up (NaN, Inf) during a run.
class InstabilityError : public std::runtime_error {
public:
  InstabilityError(std::size_t step, double max_abs)
      : std::runtime_error("instability detected at step " + std::to_string(step) +
                           " (max|u| = " + std::to_string(max_abs) + ")"),
        step_(step),
        max_abs_(max_abs) {}

  std::size_t step() const noexcept { return step_; }
  double max_abs() const noexcept { return max_abs_; }

private:
  std::size_t step_;
  double max_abs_;
};

}  // namespace wgabc
