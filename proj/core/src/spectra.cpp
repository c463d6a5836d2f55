#include "frustra/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "frustra/error.hpp"

namespace frustra {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTarget = 1e-14;

double frobenius(const ComplexMatrix& m) { return m.norm(); }

void orthonormalize_against(Eigen::Ref<ComplexVector> v, const ComplexMatrix& basis, Eigen::Index count) {
  // Two passes of modified Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < count; ++j) {
      const Complex proj = basis.col(j).dot(v);
      v -= proj * basis.col(j);
    }
  }
}

// Rotation (p, q) that annihilates a(p, q) of a Hermitian matrix.
struct JacobiRotation {
  Complex pp, pq, qp, qq;
  double t;
};

JacobiRotation make_rotation(double app, double aqq, Complex apq) {
  const double abs_b = std::abs(apq);
  const Complex phase_conj = std::conj(apq) / abs_b;
  const double zeta = (aqq - app) / (2.0 * abs_b);
  double t;
  if (std::abs(zeta) > 1e150) {
    t = 0.5 / zeta;
  } else {
    t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return {Complex(c, 0.0), Complex(s, 0.0), -s * phase_conj, c * phase_conj, t};
}

EigenDecomposition jacobi(const ComplexMatrix& input, bool want_vectors) {
  const Eigen::Index n = input.rows();
  ComplexMatrix a = 0.5 * (input + input.adjoint());
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = Complex(a(i, i).real(), 0.0);
  ComplexMatrix v;
  if (want_vectors) v = ComplexMatrix::Identity(n, n);

  const double target = kOffDiagonalTarget * frobenius(a);
  int sweep = 0;
  for (;; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off <= target || off == 0.0) break;
    if (sweep >= kMaxSweeps) {
      throw Error(ErrorKind::NoConvergence,
                  "Jacobi eigensolver exceeded " + std::to_string(kMaxSweeps) + " sweeps (off-diagonal mass " +
                      std::to_string(off) + ")");
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double abs_b = std::abs(b);
        if (abs_b == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible against both diagonal entries: drop it instead of rotating.
        if (sweep > 3 && std::abs(app) + 100.0 * abs_b == std::abs(app) &&
            std::abs(aqq) + 100.0 * abs_b == std::abs(aqq)) {
          a(p, q) = a(q, p) = Complex(0.0, 0.0);
          continue;
        }
        const JacobiRotation r = make_rotation(app, aqq, b);

        const ComplexVector col_p = a.col(p);
        const ComplexVector col_q = a.col(q);
        a.col(p) = col_p * r.pp + col_q * r.qp;
        a.col(q) = col_p * r.pq + col_q * r.qq;
        const Eigen::RowVectorXcd row_p = a.row(p);
        const Eigen::RowVectorXcd row_q = a.row(q);
        a.row(p) = std::conj(r.pp) * row_p + std::conj(r.qp) * row_q;
        a.row(q) = std::conj(r.pq) * row_p + std::conj(r.qq) * row_q;
        a(p, p) = Complex(app - r.t * abs_b, 0.0);
        a(q, q) = Complex(aqq + r.t * abs_b, 0.0);
        a(p, q) = a(q, p) = Complex(0.0, 0.0);

        if (want_vectors) {
          const ComplexVector vp = v.col(p);
          const ComplexVector vq = v.col(q);
          v.col(p) = vp * r.pp + vq * r.qp;
          v.col(q) = vp * r.pq + vq * r.qq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) out.values(k) = a(order[k], order[k]).real();
  if (!want_vectors) return out;

  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) out.vectors.col(k) = v.col(order[k]);

  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (k < n && out.values(k) - out.values(k - 1) < tolerance::kStructural * scale) continue;
    if (k - start > 1) {
      for (Eigen::Index c = start; c < k; ++c) {
        ComplexVector col = out.vectors.col(c);
        for (int pass = 0; pass < 2; ++pass) {
          for (Eigen::Index j = start; j < c; ++j) col -= out.vectors.col(j).dot(col) * out.vectors.col(j);
        }
        out.vectors.col(c) = col.normalized();
      }
    }
    start = k;
  }
  for (Eigen::Index k = 0; k < n; ++k) fix_phase(out.vectors.col(k));
  return out;
}

void require_square(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be square, got " +
                                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Operator:
      return "operator";
    case NormKind::HilbertSchmidt:
      return "hilbert_schmidt";
    case NormKind::Trace:
      return "trace";
  }
  return "unknown";
}

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must have at least one row and column");
  }
  if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j) sum += std::norm(m(i, j));
    }
  }
  return std::sqrt(sum);
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix skew = m - m.adjoint();
  const double skew_f = frobenius(skew);
  if (skew_f == 0.0) return true;
  const double n = static_cast<double>(m.rows());
  const double m_f = frobenius(m);
  // ||X||_F / sqrt(n) <= ||X||_op <= ||X||_F brackets both sides.
  if (skew_f <= tol * std::max(1.0, m_f / std::sqrt(n))) return true;
  if (skew_f / std::sqrt(n) > tol * std::max(1.0, m_f)) return false;
  // Undecided: evaluate both operator norms exactly. i(M - M^dagger) is Hermitian.
  const ComplexMatrix herm_skew = Complex(0.0, 1.0) * skew;
  const double skew_op = jacobi(herm_skew, false).values.cwiseAbs().maxCoeff();
  const ComplexMatrix gram = m.adjoint() * m;
  const double m_op = std::sqrt(std::max(0.0, jacobi(gram, false).values.maxCoeff()));
  return skew_op <= tol * std::max(1.0, m_op);
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m, double tol) {
  require_finite(m, "hermitian_eig input");
  require_square(m, "hermitian_eig input");
  if (!is_hermitian(m, tol)) throw Error(ErrorKind::NotHermitian, "hermitian_eig input is not Hermitian");
  return jacobi(m, true);
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
  require_finite(m, "hermitian_eigenvalues input");
  require_square(m, "hermitian_eigenvalues input");
  if (!is_hermitian(m, tol)) throw Error(ErrorKind::NotHermitian, "hermitian_eigenvalues input is not Hermitian");
  return jacobi(m, false).values;
}

SingularValueDecomposition svd(const ComplexMatrix& m) {
  require_finite(m, "svd input");
  if (m.rows() < m.cols()) {
    SingularValueDecomposition t = svd(m.adjoint());
    std::swap(t.left, t.right);
    return t;
  }
  const Eigen::Index rows = m.rows();
  const Eigen::Index k = m.cols();
  const EigenDecomposition gram = jacobi(m.adjoint() * m, true);

  ComplexMatrix right(k, k);
  for (Eigen::Index i = 0; i < k; ++i) right.col(i) = gram.vectors.col(k - 1 - i);
  ComplexMatrix images = m * right;
  RealVector sigma(k);
  for (Eigen::Index i = 0; i < k; ++i) sigma(i) = images.col(i).norm();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return sigma(a) > sigma(b); });

  SingularValueDecomposition out;
  out.values.resize(k);
  out.right.resize(k, k);
  out.left.resize(rows, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.values(i) = sigma(order[i]);
    out.right.col(i) = right.col(order[i]);
  }
  const double cutoff = 1e-14 * out.values(0);
  Eigen::Index next_unit = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    ComplexVector u;
    if (out.values(i) > cutoff && out.values(i) > 0.0) {
      u = images.col(order[i]) / out.values(i);
      orthonormalize_against(u, out.left, i);
      const double norm = u.norm();
      if (norm > 0.5) {
        out.left.col(i) = u / norm;
        continue;
      }
    }
    // Complete with the first standard basis vector that survives projection.
    for (; next_unit < rows; ++next_unit) {
      u = ComplexVector::Unit(rows, next_unit);
      orthonormalize_against(u, out.left, i);
      const double norm = u.norm();
      if (norm > 0.5) {
        out.left.col(i) = u / norm;
        ++next_unit;
        break;
      }
    }
  }
  return out;
}

RealVector singular_values(const ComplexMatrix& m) { return svd(m).values; }

ComplexMatrix operator_abs(const ComplexMatrix& s) {
  require_square(s, "operator_abs input");
  const SingularValueDecomposition d = svd(s);
  return d.left * d.values.cast<Complex>().asDiagonal() * d.left.adjoint();
}

PsdComparison psd_leq(const ComplexMatrix& s, const ComplexMatrix& t, double tol) {
  require_finite(s, "psd_leq lhs");
  require_finite(t, "psd_leq rhs");
  if (s.rows() != t.rows() || s.cols() != t.cols()) {
    throw Error(ErrorKind::InvalidArgument, "psd_leq operands differ in shape");
  }
  if (!is_hermitian(s, tol) || !is_hermitian(t, tol)) {
    throw Error(ErrorKind::NotHermitian, "psd_leq operands must be Hermitian");
  }
  const RealVector diff = jacobi(t - s, false).values;
  const double margin = diff(0);
  const double norm = diff.cwiseAbs().maxCoeff();
  return {margin >= -tol * std::max(1.0, norm), margin};
}

double ui_norm_from_singular_values(const RealVector& sigma, NormKind kind) {
  switch (kind) {
    case NormKind::Operator:
      return sigma.size() == 0 ? 0.0 : sigma.maxCoeff();
    case NormKind::HilbertSchmidt:
      return sigma.norm();
    case NormKind::Trace:
      return sigma.sum();
  }
  return 0.0;
}

double ui_norm(const ComplexMatrix& s, NormKind kind) {
  if (kind == NormKind::HilbertSchmidt) {
    require_finite(s, "ui_norm input");
    return s.norm();
  }
  return ui_norm_from_singular_values(singular_values(s), kind);
}

bool singular_dominance(const ComplexMatrix& s, const ComplexMatrix& t, double tol) {
  if (s.rows() != t.rows() || s.cols() != t.cols()) {
    throw Error(ErrorKind::InvalidArgument, "singular_dominance operands differ in shape");
  }
  const RealVector ss = singular_values(s);
  const RealVector ts = singular_values(t);
  for (Eigen::Index k = 0; k < ss.size(); ++k) {
    if (ss(k) > ts(k) + tol) return false;
  }
  return true;
}

bool norm_chain_holds(const ComplexMatrix& s) {
  const RealVector sigma = singular_values(s);
  const double op = ui_norm_from_singular_values(sigma, NormKind::Operator);
  const double slack = 1e-12 * std::max(1.0, op);
  return op <= ui_norm_from_singular_values(sigma, NormKind::HilbertSchmidt) + slack &&
         op <= ui_norm_from_singular_values(sigma, NormKind::Trace) + slack;
}

ComplexMatrix projector_onto(const ComplexMatrix& columns) { return columns * columns.adjoint(); }

bool is_projector(const ComplexMatrix& p, double tol) {
  if (p.rows() != p.cols() || !p.allFinite()) return false;
  const double scale = std::max(1.0, p.norm());
  return (p - p.adjoint()).norm() <= tol * scale && (p * p - p).norm() <= tol * scale;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

void fix_phase(Eigen::Ref<ComplexVector> v) {
  if (v.size() == 0) return;
  const double max_abs = v.cwiseAbs().maxCoeff();
  if (max_abs == 0.0) return;
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= max_abs * (1.0 - 1e-12)) {
      pivot = i;
      break;
    }
  }
  const Complex rot = std::conj(v(pivot)) / std::abs(v(pivot));
  v *= rot;
  v(pivot) = Complex(v(pivot).real(), 0.0);
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian:
      return "NotHermitian";
    case ErrorKind::NoConvergence:
      return "NoConvergence";
    case ErrorKind::DimensionCap:
      return "DimensionCap";
    case ErrorKind::NonHermitianTerm:
      return "NonHermitianTerm";
    case ErrorKind::InvalidModel:
      return "InvalidModel";
    case ErrorKind::InvalidAssignment:
      return "InvalidAssignment";
    case ErrorKind::InvalidBipartition:
      return "InvalidBipartition";
    case ErrorKind::OracleScaleExceeded:
      return "OracleScaleExceeded";
    case ErrorKind::UndefinedBound:
      return "UndefinedBound";
    case ErrorKind::EnumerationCap:
      return "EnumerationCap";
    case ErrorKind::IndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorKind::DegenerateSeparation:
      return "DegenerateSeparation";
    case ErrorKind::NotProjector:
      return "NotProjector";
    case ErrorKind::NotBipartite:
      return "NotBipartite";
    case ErrorKind::InvalidArgument:
      return "InvalidArgument";
    case ErrorKind::Parse:
      return "Parse";
  }
  return "Unknown";
}

}  // namespace frustra
