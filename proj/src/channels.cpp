#include "channels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcoh {

namespace {

void append_pauli_mixture(std::vector<Mat4>& kraus,
                          const std::vector<std::pair<int, double>>& single,
                          double mu) {
  // Uncorrelated part sqrt((1-mu) Pi Pj) si(x)sj.
  for (const auto& [i, pi] : single)
    for (const auto& [j, pj] : single)
      kraus.push_back(std::sqrt((1.0 - mu) * pi * pj) *
                      kron(pauli(i), pauli(j)));
  // Correlated part sqrt(mu Pk) sk(x)sk.
  for (const auto& [k, pk] : single)
    kraus.push_back(std::sqrt(mu * pk) * kron(pauli(k), pauli(k)));
}

}  // namespace

MemoryChannel build_channel(ChannelKind kind, double p, double mu,
                            bool literal_text_probs) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("build_channel: p must be in [0,1]");
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("build_channel: mu must be in [0,1]");

  MemoryChannel ch;
  ch.kind = kind;
  ch.p = p;
  ch.mu = mu;
  ch.literal_text_probs = literal_text_probs;

  switch (kind) {
    case ChannelKind::AmplitudeDamping: {
      Mat2 a0, a1;
      a0.at(0, 0) = std::sqrt(1.0 - p);
      a0.at(1, 1) = 1.0;
      a1.at(1, 0) = std::sqrt(p);
      const Mat2 a[2] = {a0, a1};
      for (const Mat2& ai : a)
        for (const Mat2& aj : a)
          ch.kraus.push_back(std::sqrt(1.0 - mu) * kron(ai, aj));
      Mat4 e00, e11;
      e00.at(0, 0) = std::sqrt(1.0 - p);
      e00.at(1, 1) = e00.at(2, 2) = e00.at(3, 3) = 1.0;
      e11.at(3, 0) = std::sqrt(p);
      ch.kraus.push_back(std::sqrt(mu) * e00);
      ch.kraus.push_back(std::sqrt(mu) * e11);
      break;
    }
    case ChannelKind::PhaseDamping: {
      const double q = literal_text_probs ? p : 0.5 * p;
      append_pauli_mixture(ch.kraus, {{0, 1.0 - q}, {3, q}}, mu);
      break;
    }
    case ChannelKind::Depolarizing: {
      append_pauli_mixture(
          ch.kraus, {{0, 1.0 - p}, {1, p / 3.0}, {2, p / 3.0}, {3, p / 3.0}},
          mu);
      break;
    }
  }

  const double dev = cptp_deviation(ch);
  if (dev > kCptpTol) {
    std::ostringstream os;
    os << "build_channel: Kraus completeness deviation " << dev << " exceeds "
       << kCptpTol;
    throw std::runtime_error(os.str());
  }
  return ch;
}

DensityMatrix apply(const MemoryChannel& ch, const DensityMatrix& rho) {
  DensityMatrix out;
  for (const Mat4& e : ch.kraus) out.mat = out.mat + e * rho.mat * adjoint(e);
  validate_density(out, "apply");
  return out;
}

double cptp_deviation(const MemoryChannel& ch) {
  Mat4 sum;
  for (const Mat4& e : ch.kraus) sum = sum + adjoint(e) * e;
  return max_abs_diff(sum, Mat4::identity());
}

const char* channel_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AmplitudeDamping: return "ad";
    case ChannelKind::PhaseDamping: return "pd";
    case ChannelKind::Depolarizing: return "dep";
  }
  return "?";
}

}  // namespace qcoh
