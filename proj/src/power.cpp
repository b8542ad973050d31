#include "power.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcoh {

namespace {

double clamp_power(double v) {
  if (v < 0.0) {
    if (v < -kPowerClampTol)
      throw std::runtime_error("power: negative value beyond tolerance");
    return 0.0;
  }
  return v;
}

// Bell vectors (|00>+|11>, |00>-|11>, |01>+|10>, |01>-|10>)/sqrt(2) as the
// columns of the basis-change unitary.
Mat4 bell_unitary() {
  const double s = 1.0 / std::numbers::sqrt2;
  Mat4 u;
  u.at(0, 0) = s;
  u.at(3, 0) = s;
  u.at(0, 1) = s;
  u.at(3, 1) = -s;
  u.at(1, 2) = s;
  u.at(2, 2) = s;
  u.at(1, 3) = s;
  u.at(2, 3) = -s;
  return u;
}

struct DecoherObjective {
  const MemoryChannel& ch;
  MeasureKind measure;
  std::int64_t evaluations = 0;

  // Output coherence to be minimized.
  double operator()(const PhaseQuadruple& q) {
    ++evaluations;
    return coherence(apply(ch, max_coherent_product(q)), measure);
  }
};

// One cyclic-coordinate-descent run; mutates best/best_value in place.
void descend(DecoherObjective& obj, PhaseQuadruple& best, double& best_value) {
  double step = 2.0 * std::numbers::pi / kPowerGridPointsPerPhase;
  while (step >= kDescentMinStep) {
    bool improved = false;
    for (int axis = 0; axis < 4; ++axis) {
      for (double sign : {1.0, -1.0}) {
        PhaseQuadruple cand = best;
        double* comp = axis == 0   ? &cand.alpha
                       : axis == 1 ? &cand.beta
                       : axis == 2 ? &cand.theta
                                   : &cand.phi;
        *comp += sign * step;
        const double v = obj(cand);
        if (v < best_value - kDescentImproveEps) {
          best = cand;
          best_value = v;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2.0;
  }
}

}  // namespace

PowerResult cohering_power(const MemoryChannel& ch, MeasureKind measure,
                           bool bell_basis) {
  const Mat4 u = bell_unitary();
  PowerResult r;
  r.value = -1.0;
  for (int k = 0; k < 4; ++k) {
    DensityMatrix in;
    if (bell_basis) {
      Mat4 proj;
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
          proj.at(a, b) =
              u.at(a, static_cast<std::size_t>(k)) *
              std::conj(u.at(b, static_cast<std::size_t>(k)));
      in.mat = proj;
    } else {
      in = basis_state(k);
    }
    DensityMatrix out = apply(ch, in);
    if (bell_basis) out.mat = adjoint(u) * out.mat * u;
    const double v = coherence(out, measure);
    ++r.evaluations;
    if (v > r.value) {
      r.value = v;
      r.argmax_index = k;
    }
  }
  r.value = clamp_power(r.value);
  return r;
}

PowerResult decohering_power(const MemoryChannel& ch, MeasureKind measure) {
  DecoherObjective obj{ch, measure};
  const double step =
      2.0 * std::numbers::pi / kPowerGridPointsPerPhase;

  PhaseQuadruple best{};
  double best_value = obj(best);
  for (int ia = 0; ia < kPowerGridPointsPerPhase; ++ia)
    for (int ib = 0; ib < kPowerGridPointsPerPhase; ++ib)
      for (int it = 0; it < kPowerGridPointsPerPhase; ++it)
        for (int ip = 0; ip < kPowerGridPointsPerPhase; ++ip) {
          if (ia == 0 && ib == 0 && it == 0 && ip == 0) continue;
          const PhaseQuadruple q{ia * step, ib * step, it * step, ip * step};
          const double v = obj(q);
          if (v < best_value - kDescentImproveEps) {
            best = q;
            best_value = v;
          }
        }

  descend(obj, best, best_value);

  const double cmax = measure == MeasureKind::L1Norm ? 3.0 : 2.0;
  PowerResult r;
  r.value = clamp_power(cmax - best_value);
  r.argmax_phases = best;
  r.evaluations = obj.evaluations;
  return r;
}

double decohering_descent_value(const MemoryChannel& ch, MeasureKind measure,
                                const PhaseQuadruple& start,
                                std::int64_t* evaluations) {
  DecoherObjective obj{ch, measure};
  PhaseQuadruple best = start;
  double best_value = obj(best);
  descend(obj, best, best_value);
  if (evaluations) *evaluations = obj.evaluations;
  const double cmax = measure == MeasureKind::L1Norm ? 3.0 : 2.0;
  return clamp_power(cmax - best_value);
}

}  // namespace qcoh
