#include "matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace qcoh {

const Mat2& pauli(int k) {
  static const std::array<Mat2, 4> sigma = [] {
    std::array<Mat2, 4> s{};
    s[0].at(0, 0) = 1.0;
    s[0].at(1, 1) = 1.0;
    s[1].at(0, 1) = 1.0;
    s[1].at(1, 0) = 1.0;
    s[2].at(0, 1) = Cx{0.0, -1.0};
    s[2].at(1, 0) = Cx{0.0, 1.0};
    s[3].at(0, 0) = 1.0;
    s[3].at(1, 1) = -1.0;
    return s;
  }();
  if (k < 0 || k > 3) {
    throw std::invalid_argument("pauli: index must be in 0..3, got " +
                                std::to_string(k));
  }
  return sigma[static_cast<std::size_t>(k)];
}

namespace {

template <std::size_t N>
double offdiag_frobenius(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a.at(i, j));
  return std::sqrt(s);
}

// One rotation zeroing a(p,q). Works on the full matrix; diagonal kept real
// and the lower triangle mirrored each step to stop rounding drift.
template <std::size_t N>
void jacobi_rotate(Matrix<N>& a, std::size_t p, std::size_t q) {
  const Cx apq = a.at(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Cx phase = apq / r;  // e^{i phi}
  const double app = a.at(p, p).real();
  const double aqq = a.at(q, q).real();

  // tan(2 theta) = 2r / (app - aqq); |theta| <= pi/4 for stability.
  const double tau = (app - aqq) / (2.0 * r);
  double t;
  if (std::isinf(tau)) {
    t = 0.0;
  } else if (tau >= 0.0) {
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  } else {
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // A <- J^dag A J with J[p][p]=c, J[p][q]=-s*phase, J[q][p]=s*conj(phase),
  // J[q][q]=c (identity elsewhere).
  for (std::size_t k = 0; k < N; ++k) {
    const Cx akp = a.at(k, p);
    const Cx akq = a.at(k, q);
    a.at(k, p) = c * akp + s * std::conj(phase) * akq;
    a.at(k, q) = -s * phase * akp + c * akq;
  }
  for (std::size_t k = 0; k < N; ++k) {
    const Cx apk = a.at(p, k);
    const Cx aqk = a.at(q, k);
    a.at(p, k) = c * apk + s * phase * aqk;
    a.at(q, k) = -s * std::conj(phase) * apk + c * aqk;
  }
  a.at(p, q) = 0.0;
  a.at(q, p) = 0.0;
  a.at(p, p) = Cx{a.at(p, p).real(), 0.0};
  a.at(q, q) = Cx{a.at(q, q).real(), 0.0};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      const Cx m = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
      a.at(i, j) = m;
      a.at(j, i) = std::conj(m);
    }
}

}  // namespace

template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const Matrix<N>& h) {
  if (!all_finite(h))
    throw std::invalid_argument("hermitian_eigenvalues: non-finite entry");
  const double dev = hermiticity_deviation(h);
  if (dev > kHermitianTol) {
    std::ostringstream os;
    os << "hermitian_eigenvalues: input deviates from Hermitian by " << dev
       << " (tolerance " << kHermitianTol << ")";
    throw NotHermitianError(os.str());
  }

  Matrix<N> a;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      a.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));

  bool converged = false;
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (offdiag_frobenius(a) < kJacobiOffdiagTol) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) jacobi_rotate(a, p, q);
  }
  if (!converged && offdiag_frobenius(a) >= kJacobiOffdiagTol)
    throw NoConvergenceError(
        "hermitian_eigenvalues: Jacobi sweep cap reached before convergence");

  std::array<double, N> eig;
  for (std::size_t i = 0; i < N; ++i) eig[i] = a.at(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

template std::array<double, 2> hermitian_eigenvalues(const Mat2&);
template std::array<double, 4> hermitian_eigenvalues(const Mat4&);

}  // namespace qcoh
