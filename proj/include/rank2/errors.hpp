#pragma once

#include <stdexcept>
#include <string>

namespace rank2 {

// Exact division left a remainder. Inside the exchange recursion this can only
// mean a bug, since every cluster variable is a Laurent polynomial.
struct NotDivisible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonTransversal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PathOnWall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoGenericPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonGenericEndpoint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MalformedInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An internal invariant failed; always a bug in this library.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace rank2
