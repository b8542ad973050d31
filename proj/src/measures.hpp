// The two coherence quantifiers (computational basis, log base 2) and the
// entropy primitives behind them.
#pragma once

#include <span>

#include "states.hpp"

namespace qcoh {

enum class MeasureKind { L1Norm, RelativeEntropy };

// Probabilities below this are treated as exact zeros before the log
// (0 log 0 = 0); the study's own example state has an exact zero eigenvalue.
inline constexpr double kZeroProbTol = 1e-15;
// Eigenvalues in [-kEigClampTol, 0) clamp to 0; lower values are errors.
inline constexpr double kEigClampTol = 1e-10;
// Relative-entropy values in [-kCrClampTol, 0) clamp to 0; lower values are
// errors (the measure is provably nonnegative).
inline constexpr double kCrClampTol = 1e-10;

// Sum of the moduli of all off-diagonal entries; in [0, 3] for valid states.
double l1_coherence(const DensityMatrix& rho);

// -sum p log2 p over a probability vector, clamping per the constants above.
// Throws std::invalid_argument on entries below -kEigClampTol.
double entropy_bits(std::span<const double> probs);

// Von Neumann entropy -sum lambda log2 lambda; in [0, 2] for two qubits.
double von_neumann_entropy(const DensityMatrix& rho);

// S(rho_diag) - S(rho); in [0, 2]. Small negative rounding clamps to 0;
// anything below -kCrClampTol throws std::runtime_error.
double relative_entropy_coherence(const DensityMatrix& rho);

// Dispatch on MeasureKind.
double coherence(const DensityMatrix& rho, MeasureKind measure);

}  // namespace qcoh
