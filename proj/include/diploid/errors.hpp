#pragma once

#include <stdexcept>
#include <string>

namespace diploid {

/// Bad arguments or preconditions violated by the caller.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integrator produced a non-finite value.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Random walk with r in {0, 1}: one of the absorbing states is unreachable.
class DegenerateWalk : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Path-counting bound requested with c <= 2d, where the series diverges.
class DivergentBound : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Configuration text rejected; carries the offending line (0 when not tied to a line).
class ConfigError : public UsageError {
 public:
  ConfigError(const std::string& what, int line)
      : UsageError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace diploid
