#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dampflow {

/// Thrown when a pointwise speed exceeds ClipPolicy::v_max under clip mode
/// `error`. Carries the flat collocation index of the offending point.
class OverflowRisk : public std::runtime_error {
  public:
    OverflowRisk(std::size_t flat_index, double speed, double v_max)
        : std::runtime_error("speed " + std::to_string(speed) + " exceeds clip limit " +
                             std::to_string(v_max) + " at grid point " + std::to_string(flat_index)),
          flat_index_(flat_index),
          speed_(speed) {}

    std::size_t flat_index() const noexcept { return flat_index_; }
    double speed() const noexcept { return speed_; }

  private:
    std::size_t flat_index_;
    double speed_;
};

/// Thrown when a solver state coefficient becomes NaN or Inf.
class NonFiniteState : public std::runtime_error {
  public:
    explicit NonFiniteState(double time)
        : std::runtime_error("non-finite solver state at t = " + std::to_string(time)), time_(time) {}

    double time() const noexcept { return time_; }

  private:
    double time_;
};

/// Config parse or validation failure, anchored to a line of the input
/// document (line 0 means the error came from a command-line override).
class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string& message)
        : std::runtime_error("config line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const noexcept { return line_; }

  private:
    int line_;
};

class EmptyLedger : public std::runtime_error {
  public:
    EmptyLedger() : std::runtime_error("energy ledger has no rows") {}
};

}  // namespace dampflow
