#pragma once

#include <stdexcept>
#include <string>

namespace spherical {

/// Bad input: unsupported type/rank, non-prime p, element outside the group, ...
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when p is not a good odd prime for the requested root system.
class BadCharacteristic : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// An enumeration would exceed the configured element budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check failed. Always a bug or a counterexample.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace spherical
