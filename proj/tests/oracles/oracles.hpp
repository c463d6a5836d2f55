#pragma once

// Reference computations that share no code with the library: Eigen's own
// solvers, hand-rolled Kronecker products and closed-form expressions.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Eigen::VectorXd eigenvalues(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

inline Vector ground_state(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvectors().col(0);
}

inline Eigen::VectorXd singular_values(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues(); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index k = 0; k < b.rows(); ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
      }
    }
  }
  return out;
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix id(Eigen::Index d) { return Matrix::Identity(d, d); }

/// Operator `op` on qubit `site` of an n-qubit register (site 0 most significant).
inline Matrix on_site(const Matrix& op, int site, int n) {
  Matrix out = Matrix::Ones(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, k == site ? op : id(2));
  return out;
}

/// 1 - (largest singular value)^2 of the dl x dr amplitude matrix.
inline double bipartite_measure(const Vector& psi, Eigen::Index dl, Eigen::Index dr) {
  Matrix m(dl, dr);
  for (Eigen::Index a = 0; a < dl; ++a) {
    for (Eigen::Index b = 0; b < dr; ++b) m(a, b) = psi(a * dr + b);
  }
  const double s = singular_values(m)(0);
  return 1.0 - s * s;
}

// Two-spin transverse Ising H = -g (X1 + X2) - Z1 Z2.
inline Matrix ising2(double g) {
  return -g * (kron(pauli_x(), id(2)) + kron(id(2), pauli_x())) - kron(pauli_z(), pauli_z());
}

inline double ising_ground_energy(double g) { return -std::sqrt(1.0 + 4.0 * g * g); }

inline double ising_entanglement(double g) { return 0.5 - g / std::sqrt(1.0 + 4.0 * g * g); }

inline double ising_bound_symmetric(double g) { return (1.0 + 2.0 * g - std::sqrt(1.0 + 4.0 * g * g)) / (2.0 * g); }

inline double ising_bound_asymmetric(double g) {
  return 0.5 - (std::sqrt(1.0 + 4.0 * g * g) - std::sqrt(1.0 + g * g)) / (2.0 * g);
}

/// sin(theta) with tan(2 theta) = 2 e: overlap of the lower eigenvector of
/// [[0, e], [e, 1]] with the second basis vector.
inline double rotation_sine(double e) { return std::sin(0.5 * std::atan(2.0 * e)); }

}  // namespace oracle
