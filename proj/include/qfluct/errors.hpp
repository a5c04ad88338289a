#pragma once

#include <stdexcept>
#include <string>

namespace qfluct {

/// A precondition on an argument was violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration was requested beyond its supported size.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A numerical routine ran out of budget before reaching its tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qfluct
