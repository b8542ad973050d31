// Exception types that carry a specific failure class across module
// boundaries (the C interface maps each to its own status code).
#pragma once

#include <stdexcept>
#include <string>

namespace qcoh {

// Matrix handed to the eigensolver violates the Hermiticity tolerance.
struct NotHermitianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Iterative solver hit its sweep cap before reaching tolerance.
struct NoConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters or matrix describe something that is not a physical state.
struct InvalidStateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace qcoh
