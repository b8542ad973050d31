#include <cmath>
#include <random>
#include <string>

#include "channels.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "measures.hpp"
#include "states.hpp"

using namespace qcoh;

namespace {

const BellDiagonalParams kExample{0.1, 0.4, 0.5};

double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("all channel kinds stay trace preserving over the parameter square") {
  for (ChannelKind kind : {ChannelKind::AmplitudeDamping,
                           ChannelKind::PhaseDamping,
                           ChannelKind::Depolarizing}) {
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double p = i / 20.0;
        const double mu = j / 20.0;
        worst = std::max(worst, cptp_deviation(build_channel(kind, p, mu)));
      }
    CHECK(worst <= 1e-12);
  }
  // Literal phase-damping mode as well.
  CHECK(cptp_deviation(build_channel(ChannelKind::PhaseDamping, 0.7, 0.4,
                                     true)) <= 1e-12);
}

TEST_CASE("kraus operator counts per kind") {
  CHECK(build_channel(ChannelKind::AmplitudeDamping, 0.3, 0.5).kraus.size() ==
        6);  // 2x2 uncorrelated + 2 correlated
  CHECK(build_channel(ChannelKind::PhaseDamping, 0.3, 0.5).kraus.size() == 6);
  CHECK(build_channel(ChannelKind::Depolarizing, 0.3, 0.5).kraus.size() ==
        20);  // 4x4 uncorrelated + 4 correlated
}

TEST_CASE("p = 0 is the identity channel") {
  const DensityMatrix rho = bell_diagonal(kExample);
  for (ChannelKind kind : {ChannelKind::AmplitudeDamping,
                           ChannelKind::PhaseDamping,
                           ChannelKind::Depolarizing})
    for (double mu : {0.0, 0.3, 1.0}) {
      const DensityMatrix out = apply(build_channel(kind, 0.0, mu), rho);
      CHECK(max_abs_diff(out.mat, rho.mat) <= 1e-12);
    }
}

TEST_CASE("fully correlated amplitude damping at p = 1 reaches the frozen "
          "fixed point") {
  const MemoryChannel ch =
      build_channel(ChannelKind::AmplitudeDamping, 1.0, 1.0);
  const DensityMatrix out = apply(ch, bell_diagonal(kExample));
  CHECK(out.mat.at(0, 0).real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(out.mat.at(1, 1).real() == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(out.mat.at(2, 2).real() == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(out.mat.at(3, 3).real() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(out.mat.at(1, 2).real() == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(std::abs(out.mat.at(0, 3)) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(l1_coherence(out) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(relative_entropy_coherence(out) ==
        doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("uncorrelated amplitude damping decays populations toward |11>") {
  // Single-use A1 moves |0> to |1>, so two uncorrelated uses at p = 1 send
  // everything to |11><11|.
  const MemoryChannel ch =
      build_channel(ChannelKind::AmplitudeDamping, 1.0, 0.0);
  const DensityMatrix out = apply(ch, bell_diagonal(kExample));
  CHECK(out.mat.at(3, 3).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(l1_coherence(out) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("fully correlated phase damping freezes coherence") {
  const DensityMatrix rho = bell_diagonal(kExample);
  for (double p : {0.2, 0.6, 1.0}) {
    const DensityMatrix out =
        apply(build_channel(ChannelKind::PhaseDamping, p, 1.0), rho);
    CHECK(l1_coherence(out) == doctest::Approx(0.4).epsilon(1e-13));
    CHECK(relative_entropy_coherence(out) ==
          doctest::Approx(0.271787054159).epsilon(1e-10));
  }
}

TEST_CASE("phase damping shrink factors: default q = p/2 vs literal q = p") {
  const double p = 0.3;
  const DensityMatrix rho = bell_diagonal(kExample);
  // Default: c1' / c1 = 1 - (2 - p) p = (1 - p)^2 at mu = 0.
  const auto def = extract_correlation_coeffs(
      apply(build_channel(ChannelKind::PhaseDamping, p, 0.0), rho));
  CHECK(def.c1 / kExample.c1 ==
        doctest::Approx((1 - p) * (1 - p)).epsilon(1e-12));
  // Literal: c1' / c1 = (1 - 2q)^2 with q = p.
  const auto lit = extract_correlation_coeffs(
      apply(build_channel(ChannelKind::PhaseDamping, p, 0.0, true), rho));
  CHECK(lit.c1 / kExample.c1 == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(lit.c3 == doctest::Approx(def.c3).epsilon(1e-12));  // c3 untouched
}

TEST_CASE("depolarizing at p = 3/4, mu = 0 yields the maximally mixed state") {
  const DensityMatrix out =
      apply(build_channel(ChannelKind::Depolarizing, 0.75, 0.0),
            bell_diagonal(kExample));
  CHECK(max_abs_diff(out.mat, 0.25 * Mat4::identity()) <= 1e-14);
}

TEST_CASE("random valid inputs stay valid under every channel") {
  std::mt19937_64 rng(20240817);
  int tested = 0;
  while (tested < 30) {
    const BellDiagonalParams c{2 * u01(rng) - 1, 2 * u01(rng) - 1,
                               2 * u01(rng) - 1};
    bool valid = true;
    for (double e : bell_diagonal_eigenvalues(c))
      if (e < 0) valid = false;
    if (!valid) continue;
    ++tested;
    const auto kind = static_cast<ChannelKind>(tested % 3);
    const DensityMatrix out =
        apply(build_channel(kind, u01(rng), u01(rng)), bell_diagonal(c));
    CHECK(hermiticity_deviation(out.mat) <= 1e-10);
    CHECK(std::abs(trace(out.mat).real() - 1.0) <= 1e-10);
    for (double e : hermitian_eigenvalues(out.mat)) CHECK(e >= -1e-10);
  }
}

TEST_CASE("corrupted kraus set fails the completeness check") {
  MemoryChannel ch = build_channel(ChannelKind::AmplitudeDamping, 0.4, 0.5);
  ch.kraus[0] = 1.01 * ch.kraus[0];
  CHECK(cptp_deviation(ch) > 1e-3);
  // Applying it breaks the unit-trace invariant on some input.
  CHECK_THROWS_AS(apply(ch, bell_diagonal(kExample)), InvalidStateError);
}

TEST_CASE("parameter range errors") {
  CHECK_THROWS_AS(build_channel(ChannelKind::AmplitudeDamping, -0.1, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_channel(ChannelKind::AmplitudeDamping, 1.1, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_channel(ChannelKind::PhaseDamping, 0.5, -0.01),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_channel(ChannelKind::Depolarizing, 0.5, 1.01),
                  std::invalid_argument);
}

TEST_CASE("channel names") {
  CHECK(std::string(channel_name(ChannelKind::AmplitudeDamping)) == "ad");
  CHECK(std::string(channel_name(ChannelKind::PhaseDamping)) == "pd");
  CHECK(std::string(channel_name(ChannelKind::Depolarizing)) == "dep");
}
