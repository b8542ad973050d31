#include "states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace qcoh {

std::array<double, 4> bell_diagonal_eigenvalues(const BellDiagonalParams& c) {
  return {0.25 * (1 - c.c1 - c.c2 - c.c3), 0.25 * (1 - c.c1 + c.c2 + c.c3),
          0.25 * (1 + c.c1 - c.c2 + c.c3), 0.25 * (1 + c.c1 + c.c2 - c.c3)};
}

DensityMatrix bell_diagonal(const BellDiagonalParams& c) {
  static const char* kExpr[4] = {
      "(1 - c1 - c2 - c3)/4", "(1 - c1 + c2 + c3)/4", "(1 + c1 - c2 + c3)/4",
      "(1 + c1 + c2 - c3)/4"};
  const auto eig = bell_diagonal_eigenvalues(c);
  for (int i = 0; i < 4; ++i) {
    if (eig[i] < -kBellParamTol) {
      std::ostringstream os;
      os << "bell_diagonal: eigenvalue " << kExpr[i] << " = " << eig[i]
         << " is negative beyond tolerance " << -kBellParamTol;
      throw InvalidStateError(os.str());
    }
  }

  DensityMatrix rho;
  Mat4& m = rho.mat;
  m.at(0, 0) = m.at(3, 3) = 0.25 * (1 + c.c3);
  m.at(1, 1) = m.at(2, 2) = 0.25 * (1 - c.c3);
  m.at(0, 3) = m.at(3, 0) = 0.25 * (c.c1 - c.c2);
  m.at(1, 2) = m.at(2, 1) = 0.25 * (c.c1 + c.c2);
  return rho;
}

DensityMatrix basis_state(int k) {
  if (k < 0 || k > 3)
    throw std::invalid_argument("basis_state: index must be in 0..3");
  DensityMatrix rho;
  rho.mat.at(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = 1.0;
  return rho;
}

DensityMatrix max_coherent_product(const PhaseQuadruple& ph) {
  const Cx i{0.0, 1.0};
  const std::array<Cx, 4> v = {
      0.5 * std::exp(i * (ph.alpha + ph.theta)),
      0.5 * std::exp(i * (ph.alpha + ph.phi)),
      0.5 * std::exp(i * (ph.beta + ph.theta)),
      0.5 * std::exp(i * (ph.beta + ph.phi)),
  };
  DensityMatrix rho;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) rho.mat.at(r, c) = v[r] * std::conj(v[c]);
  return rho;
}

namespace {

double pauli_overlap(const DensityMatrix& rho, int left, int right) {
  return trace(rho.mat * kron(pauli(left), pauli(right))).real();
}

}  // namespace

CorrelationCoefficients extract_correlation_coeffs(const DensityMatrix& rho) {
  CorrelationCoefficients out;
  out.c1 = pauli_overlap(rho, 1, 1);
  out.c2 = pauli_overlap(rho, 2, 2);
  out.c3 = pauli_overlap(rho, 3, 3);
  out.a3 = pauli_overlap(rho, 3, 0);
  out.b3 = pauli_overlap(rho, 0, 3);
  return out;
}

double p_of_t(double gamma, double t) {
  if (gamma < 0.0 || t < 0.0)
    throw std::invalid_argument("p_of_t: gamma and t must be nonnegative");
  return 1.0 - std::exp(-gamma * t);
}

void validate_density(const DensityMatrix& rho, const char* who) {
  std::ostringstream os;
  if (!all_finite(rho.mat)) {
    os << who << ": non-finite matrix entry";
    throw InvalidStateError(os.str());
  }
  const double herm = hermiticity_deviation(rho.mat);
  if (herm > kHermitianTol) {
    os << who << ": Hermiticity deviation " << herm << " exceeds "
       << kHermitianTol;
    throw InvalidStateError(os.str());
  }
  const double tr_err = std::abs(trace(rho.mat) - Cx{1.0, 0.0});
  if (tr_err > kTraceTol) {
    os << who << ": trace deviates from 1 by " << tr_err << " (tolerance "
       << kTraceTol << ")";
    throw InvalidStateError(os.str());
  }
  const auto eig = hermitian_eigenvalues(rho.mat);
  if (eig[0] < -kPsdTol) {
    os << who << ": smallest eigenvalue " << eig[0]
       << " is negative beyond tolerance " << -kPsdTol;
    throw InvalidStateError(os.str());
  }
}

}  // namespace qcoh
