#pragma once

#include <stdexcept>
#include <string>

namespace twistperiod {

// An input violates an operation's stated precondition (non-generic exponents,
// non-general position, unsupported dimension, ...). `reason` is a short
// machine-readable string such as "genericity: integer eigenvalue at j=1".
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(std::string reason)
      : std::runtime_error(reason), reason_(std::move(reason)) {}
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

// Quadrature or Newton iteration failed to reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal identity that must hold for every valid input failed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace twistperiod
