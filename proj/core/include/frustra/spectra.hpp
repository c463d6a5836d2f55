#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace frustra {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tolerance {
inline constexpr double kStructural = 1e-9;
inline constexpr double kReconstruction = 1e-10;
}  // namespace tolerance

/// Eigenpairs of a Hermitian matrix. Eigenvalues ascend; column k of
/// `vectors` pairs with `values[k]` and has its largest-magnitude entry real
/// and positive.
struct EigenDecomposition {
  RealVector values;
  ComplexMatrix vectors;
  int sweeps = 0;
};

/// Thin SVD: `values` descending, length min(rows, cols).
struct SingularValueDecomposition {
  RealVector values;
  ComplexMatrix left;
  ComplexMatrix right;
};

enum class NormKind { Operator, HilbertSchmidt, Trace };

inline constexpr NormKind kAllNormKinds[] = {NormKind::Operator, NormKind::HilbertSchmidt,
                                             NormKind::Trace};

std::string_view to_string(NormKind kind);

struct PsdComparison {
  bool holds = false;
  double margin = 0.0;
};

/// Throws InvalidArgument on an empty matrix or a NaN/Inf entry.
void require_finite(const ComplexMatrix& m, std::string_view what);

/// Frobenius norm of the off-diagonal part.
double off_diagonal_norm(const ComplexMatrix& m);

/// True when ||m - m^dagger||_op <= tol * max(1, ||m||_op).
bool is_hermitian(const ComplexMatrix& m, double tol = tolerance::kStructural);

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Rotations are applied in row-major (p, q) order every sweep, so the result
/// is a deterministic function of the input. Iteration stops once the
/// off-diagonal Frobenius mass falls below 1e-14 * ||M||_F, or throws
/// NoConvergence after 100 sweeps. Eigenvectors inside a cluster of
/// eigenvalues closer than 1e-9 * scale are re-orthonormalized in order.
EigenDecomposition hermitian_eig(const ComplexMatrix& m, double tol = tolerance::kStructural);

/// Eigenvalues only; same algorithm as hermitian_eig.
RealVector hermitian_eigenvalues(const ComplexMatrix& m, double tol = tolerance::kStructural);

/// SVD from the eigendecomposition of M^dagger M. Singular values are taken as
/// ||M v_k|| rather than sqrt(lambda_k) so that small ones keep absolute
/// accuracy; left vectors are recovered as M v_k / sigma_k and completed to an
/// orthonormal set where sigma_k vanishes.
SingularValueDecomposition svd(const ComplexMatrix& m);

RealVector singular_values(const ComplexMatrix& m);

/// |S| = sqrt(S S^dagger) = U Sigma U^dagger.
ComplexMatrix operator_abs(const ComplexMatrix& s);

/// S <= T in the PSD order: margin is the smallest eigenvalue of T - S.
PsdComparison psd_leq(const ComplexMatrix& s, const ComplexMatrix& t,
                      double tol = tolerance::kStructural);

double ui_norm(const ComplexMatrix& s, NormKind kind);
double ui_norm_from_singular_values(const RealVector& sigma, NormKind kind);

/// sigma_k(S) <= sigma_k(T) + tol for every k. Equivalent to the existence of
/// a unitary U with |S| <= U |T| U^dagger.
bool singular_dominance(const ComplexMatrix& s, const ComplexMatrix& t, double tol);

/// ||S||_op <= |||S||| for the Hilbert-Schmidt and trace norms.
bool norm_chain_holds(const ComplexMatrix& s);

/// Orthogonal projector onto the span of the given (orthonormal) columns.
ComplexMatrix projector_onto(const ComplexMatrix& columns);

/// Hermitian and idempotent within tol.
bool is_projector(const ComplexMatrix& p, double tol = 1e-10);

/// Kronecker product A (x) B with A as the most significant factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Applies the kernel's phase convention to a single vector.
void fix_phase(Eigen::Ref<ComplexVector> v);

}  // namespace frustra
