#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fode {

/// Argument outside the mathematical domain of an operation (α ∉ (0,1], Γ at x ≤ 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent solver or harness configuration (P > N, empty y0, unknown system, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure while advancing the trajectory. `step` is the grid index being
/// produced when the failure was detected and `t` its time.
class StepError : public std::runtime_error {
 public:
  StepError(std::size_t step, double t, const std::string& what);

  std::size_t step() const noexcept { return step_; }
  double t() const noexcept { return t_; }

 private:
  std::size_t step_;
  double t_;
};

/// Failure of a parallel execution protocol (watchdog expiry, lost message).
class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fode
