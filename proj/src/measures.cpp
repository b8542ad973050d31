#include "measures.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcoh {

double l1_coherence(const DensityMatrix& rho) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) s += std::abs(rho.mat.at(i, j));
  return s;
}

double entropy_bits(std::span<const double> probs) {
  double s = 0.0;
  for (double p : probs) {
    if (p < 0.0) {
      if (p < -kEigClampTol) {
        std::ostringstream os;
        os << "entropy_bits: probability " << p << " below -" << kEigClampTol;
        throw std::invalid_argument(os.str());
      }
      p = 0.0;
    }
    if (p < kZeroProbTol) continue;
    s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto eig = hermitian_eigenvalues(rho.mat);
  return entropy_bits(eig);
}

double relative_entropy_coherence(const DensityMatrix& rho) {
  std::array<double, 4> diag;
  for (std::size_t i = 0; i < 4; ++i) diag[i] = rho.mat.at(i, i).real();
  const double value = entropy_bits(diag) - von_neumann_entropy(rho);
  if (value < 0.0) {
    if (value < -kCrClampTol) {
      std::ostringstream os;
      os << "relative_entropy_coherence: value " << value << " below -"
         << kCrClampTol << "; eigensolver or input is broken";
      throw std::runtime_error(os.str());
    }
    return 0.0;
  }
  return value;
}

double coherence(const DensityMatrix& rho, MeasureKind measure) {
  return measure == MeasureKind::L1Norm ? l1_coherence(rho)
                                        : relative_entropy_coherence(rho);
}

}  // namespace qcoh
