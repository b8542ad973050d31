// Dense complex matrix arithmetic for the fixed 2x2 / 4x4 sizes the
// simulator needs, plus a Hermitian eigenvalue solver.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace qcoh {

using Cx = std::complex<double>;

// Input matrices must be Hermitian to this entrywise tolerance.
inline constexpr double kHermitianTol = 1e-10;
// Jacobi stops once the off-diagonal Frobenius norm drops below this.
inline constexpr double kJacobiOffdiagTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

template <std::size_t N>
struct Matrix {
  static constexpr std::size_t dim = N;
  std::array<Cx, N * N> e{};

  Cx& at(std::size_t r, std::size_t c) { return e[r * N + c]; }
  const Cx& at(std::size_t r, std::size_t c) const { return e[r * N + c]; }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <std::size_t N>
Matrix<N> operator+(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.e[i] = a.e[i] + b.e[i];
  return r;
}

template <std::size_t N>
Matrix<N> operator-(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.e[i] = a.e[i] - b.e[i];
  return r;
}

template <std::size_t N>
Matrix<N> operator*(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const Cx aik = a.at(i, k);
      if (aik == Cx{}) continue;
      for (std::size_t j = 0; j < N; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

template <std::size_t N>
Matrix<N> operator*(Cx s, const Matrix<N>& a) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.e[i] = s * a.e[i];
  return r;
}

template <std::size_t N>
Matrix<N> operator*(double s, const Matrix<N>& a) {
  return Cx{s, 0.0} * a;
}

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N>& a) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r.at(i, j) = std::conj(a.at(j, i));
  return r;
}

template <std::size_t N>
Cx trace(const Matrix<N>& a) {
  Cx t{};
  for (std::size_t i = 0; i < N; ++i) t += a.at(i, i);
  return t;
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          r.at(2 * i + k, 2 * j + l) = a.at(i, j) * b.at(k, l);
  return r;
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N * N; ++i)
    m = std::max(m, std::abs(a.e[i] - b.e[i]));
  return m;
}

template <std::size_t N>
double max_abs_entry(const Matrix<N>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(a.e[i]));
  return m;
}

template <std::size_t N>
bool all_finite(const Matrix<N>& a) {
  for (const Cx& v : a.e)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

template <std::size_t N>
double hermiticity_deviation(const Matrix<N>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j)
      m = std::max(m, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
  return m;
}

// Pauli matrices sigma_0..sigma_3 in the standard z basis.
const Mat2& pauli(int k);

// Eigenvalues of a Hermitian matrix, ascending, by cyclic complex Jacobi
// rotations on the symmetrized (H + H^dag)/2. Throws std::invalid_argument
// when the input violates kHermitianTol and std::runtime_error when the
// sweep cap is hit before the off-diagonal norm reaches kJacobiOffdiagTol.
template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const Matrix<N>& h);

extern template std::array<double, 2> hermitian_eigenvalues(const Mat2&);
extern template std::array<double, 4> hermitian_eigenvalues(const Mat4&);

}  // namespace qcoh
