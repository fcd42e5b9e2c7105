#pragma once

#include <stdexcept>
#include <string>

namespace detpert {

// Arguments whose shapes do not line up (matrix dimensions, partition totals).
struct DimensionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A matrix failed the positivity test at working precision: some Cholesky
// pivot fell at or below the pivot floor.
struct NotPositiveDefiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The Jacobi eigensolver did not reach its off-diagonal threshold within the
// sweep budget.
struct NoConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation's hypothesis does not hold for the supplied operands (e.g. a
// Loewner-order precondition); the instance is invalid, not a violation.
struct PreconditionFailedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File or JSON-format problems in the CLI-facing readers and writers.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace detpert
