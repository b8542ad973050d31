// Two-consecutive-use correlated channels: with probability mu the same
// single-qubit operation hits both transmissions, with probability 1-mu the
// two uses are independent. Weights are folded into the Kraus operators so
// application and completeness checking stay uniform across kinds.
#pragma once

#include <vector>

#include "states.hpp"

namespace qcoh {

enum class ChannelKind { AmplitudeDamping, PhaseDamping, Depolarizing };

// Kraus completeness must hold to this entrywise tolerance.
inline constexpr double kCptpTol = 1e-12;

struct MemoryChannel {
  ChannelKind kind;
  double p = 0.0;
  double mu = 0.0;
  // Phase damping built from the literal per-use flip probability q = p
  // instead of the default q = p/2 (comparison mode; see build_channel).
  bool literal_text_probs = false;
  std::vector<Mat4> kraus;
};

// Builds the channel at damping p and memory coefficient mu, both in [0,1];
// throws std::invalid_argument out of range or when completeness fails.
//
//   AmplitudeDamping: uncorrelated sqrt(1-mu) Ai(x)Aj with
//     A0 = [[sqrt(1-p),0],[0,1]], A1 = [[0,0],[sqrt(p),0]] (population decays
//     |0> -> |1>); correlated pair sqrt(mu) E00 = diag(sqrt(1-p),1,1,1) and
//     sqrt(mu) E11 with the single entry sqrt(p) at (3,0) (|00> -> |11>).
//   PhaseDamping: Pauli mixture over {s0, s3} with per-use flip q = p/2
//     (q = p in literal_text_probs mode, which changes the uncorrelated
//     shrink factor from (1-p)^2 to (1-2p)^2).
//   Depolarizing: Pauli mixture over {s0,s1,s2,s3}, P0 = 1-p, P1=P2=P3 = p/3.
MemoryChannel build_channel(ChannelKind kind, double p, double mu,
                            bool literal_text_probs = false);

// sum_k E_k rho E_k^dag. Throws when the output violates the density-matrix
// invariants (Hermitian, unit trace, PSD within tolerance).
DensityMatrix apply(const MemoryChannel& ch, const DensityMatrix& rho);

// Max entrywise deviation of sum E^dag E from the identity; passes <= kCptpTol.
double cptp_deviation(const MemoryChannel& ch);

const char* channel_name(ChannelKind kind);  // "ad", "pd", "dep"

}  // namespace qcoh
