// The two-qubit states the study uses: Bell-diagonal inputs, computational
// basis projectors, and maximally coherent product states.
//
// Basis convention: |00> -> row 0, |01> -> row 1, |10> -> row 2, |11> -> row 3.
#pragma once

#include "matrix.hpp"

namespace qcoh {

// Density-matrix validity tolerances.
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
// Bell-diagonal parameter validity admits boundary states (exact zero
// eigenvalues), hence the slightly looser bound.
inline constexpr double kBellParamTol = 1e-12;

struct BellDiagonalParams {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

// Pauli-basis description of states of the form
// (I(x)I + a3 s3(x)I + b3 I(x)s3 + sum_i ci si(x)si)/4.
struct CorrelationCoefficients {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double a3 = 0.0, b3 = 0.0;
};

struct PhaseQuadruple {
  double alpha = 0.0, beta = 0.0, theta = 0.0, phi = 0.0;
};

struct DensityMatrix {
  Mat4 mat;
};

// The four Bell-diagonal eigenvalues (1 -+ c1 -+ c2 -+ c3)/4 in the fixed
// order used by validation messages and tests.
std::array<double, 4> bell_diagonal_eigenvalues(const BellDiagonalParams& c);

// (I(x)I + c1 s1(x)s1 + c2 s2(x)s2 + c3 s3(x)s3)/4. Throws
// std::invalid_argument naming the violated eigenvalue expression when the
// parameters sit outside the state tetrahedron (beyond kBellParamTol).
DensityMatrix bell_diagonal(const BellDiagonalParams& c);

// |k><k| for k in 0..3; throws std::invalid_argument out of range.
DensityMatrix basis_state(int k);

// ((e^{ia}|0> + e^{ib}|1>)/sqrt2) (x) ((e^{it}|0> + e^{ip}|1>)/sqrt2);
// every entry has modulus 1/4.
DensityMatrix max_coherent_product(const PhaseQuadruple& phases);

// ci = Re tr(rho si(x)si), a3 = Re tr(rho s3(x)I), b3 = Re tr(rho I(x)s3).
CorrelationCoefficients extract_correlation_coeffs(const DensityMatrix& rho);

// p = 1 - exp(-gamma t); throws std::invalid_argument on negative input.
double p_of_t(double gamma, double t);

// Checks Hermiticity (kHermitianTol), unit trace (kTraceTol) and positive
// semidefiniteness (kPsdTol); throws std::invalid_argument naming the failed
// check, prefixed with the `who` label.
void validate_density(const DensityMatrix& rho, const char* who);

}  // namespace qcoh
