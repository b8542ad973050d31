// Cohering power (max output coherence over a reference basis) and
// decohering power (max coherence loss over product maximally coherent
// states) of a two-use memory channel.
#pragma once

#include <cstdint>

#include "channels.hpp"
#include "measures.hpp"
#include "states.hpp"

namespace qcoh {

// Decohering optimizer: 12 coarse grid points per phase (12^4 = 20736
// objective evaluations), then cyclic coordinate descent with step halving
// from 2*pi/12 until the step drops below kDescentMinStep radians.
inline constexpr int kPowerGridPointsPerPhase = 12;
inline constexpr double kDescentMinStep = 1e-6;
// Step accepted only on strict improvement beyond this margin (keeps the
// descent deterministic in the face of rounding noise).
inline constexpr double kDescentImproveEps = 1e-15;
// Power values in [-kPowerClampTol, 0) clamp to 0; lower values are errors.
inline constexpr double kPowerClampTol = 1e-10;

struct PowerResult {
  double value = 0.0;
  // Cohering: index of the basis projector attaining the max (ties break
  // toward the lowest index). Decohering: unused (0).
  int argmax_index = 0;
  // Decohering: phases attaining the max loss. Cohering: unused (zeros).
  PhaseQuadruple argmax_phases{};
  std::int64_t evaluations = 0;
};

// Max over the four reference projectors of the output coherence. The
// reference is the computational basis; with bell_basis true, the four Bell
// projectors are used instead and coherence is measured in the Bell basis
// (a comparison mode with no closed-form claims attached).
PowerResult cohering_power(const MemoryChannel& ch, MeasureKind measure,
                           bool bell_basis = false);

// Max over PhaseQuadruple of C(rho) - C(ch(rho)) with rho the product
// maximally coherent state; C(rho) is exactly 3 (l1) or 2 (relative entropy).
PowerResult decohering_power(const MemoryChannel& ch, MeasureKind measure);

// Coordinate descent alone from an arbitrary start (restart-invariance
// probes); returns the clamped power value reached.
double decohering_descent_value(const MemoryChannel& ch, MeasureKind measure,
                                const PhaseQuadruple& start,
                                std::int64_t* evaluations = nullptr);

}  // namespace qcoh
