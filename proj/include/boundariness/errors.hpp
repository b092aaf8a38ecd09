#pragma once

#include <stdexcept>
#include <string>

namespace boundariness {

/// Malformed or invariant-violating input (non-Hermitian matrix, point
/// outside a set, parameter out of range, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method failed (eigensolver cap, degenerate LP, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proven inequality was observed to fail on computed data.
class ClaimViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace boundariness
