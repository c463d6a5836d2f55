#include "frustra/random.hpp"

#include <algorithm>
#include <cmath>

namespace frustra {

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian(dim, dim, rng);
  return (g + g.adjoint()) * 0.5;
}

ComplexMatrix random_hermitian_with_norm(Eigen::Index dim, double norm, Rng& rng) {
  const ComplexMatrix h = random_hermitian(dim, rng);
  return h * (norm / hermitian_eigenvalues(h).cwiseAbs().maxCoeff());
}

ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(random_gaussian(dim, dim, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

PureState random_state(const std::vector<int>& dims, Rng& rng) {
  Eigen::Index size = 1;
  for (int d : dims) size *= d;
  return PureState::normalized(random_gaussian(size, 1, rng).col(0), dims);
}

std::vector<ComplexMatrix> hermitian_operator_basis(int d) {
  std::vector<ComplexMatrix> basis;
  for (int k = 0; k < d; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(k, k) = 1.0;
    basis.push_back(m);
  }
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(k, l) = sym(l, k) = 1.0;
      basis.push_back(sym);
      ComplexMatrix anti = ComplexMatrix::Zero(d, d);
      anti(k, l) = Complex(0.0, -1.0);
      anti(l, k) = Complex(0.0, 1.0);
      basis.push_back(anti);
    }
  }
  return basis;
}

SpinModel random_two_site_model(int d, Rng& rng, double local_scale, double coupling_scale) {
  SpinModel m;
  m.name = "random" + std::to_string(d) + "x" + std::to_string(d);
  m.dims = {d, d};
  for (std::size_t site = 0; site < 2; ++site) {
    m.terms.push_back({local_scale, {{site, random_hermitian(d, rng)}}});
  }
  std::normal_distribution<double> normal;
  const std::vector<ComplexMatrix> basis = hermitian_operator_basis(d);
  for (const ComplexMatrix& ga : basis) {
    for (const ComplexMatrix& gb : basis) {
      m.terms.push_back({coupling_scale * normal(rng) / d, {{0, ga}, {1, gb}}});
    }
  }
  return m;
}

SpinModel random_weakly_coupled_qubits(std::size_t sites, Rng& rng, double ratio) {
  SpinModel m;
  m.name = "weak" + std::to_string(sites);
  m.dims.assign(sites, 2);
  std::uniform_real_distribution<double> gap_dist(1.0, 3.0);
  std::uniform_real_distribution<double> offset_dist(-1.0, 1.0);
  double min_gap = 3.0;
  for (std::size_t site = 0; site < sites; ++site) {
    const double gap = gap_dist(rng);
    min_gap = std::min(min_gap, gap);
    const double offset = offset_dist(rng);
    const ComplexMatrix u = random_unitary(2, rng);
    ComplexVector levels(2);
    levels << offset, offset + gap;
    ComplexMatrix h = u * levels.asDiagonal() * u.adjoint();
    h = (h + h.adjoint()) * 0.5;
    m.terms.push_back({1.0, {{site, h}}});
  }
  std::normal_distribution<double> normal;
  std::vector<OperatorTerm> couplings;
  for (std::size_t i = 0; i < sites; ++i) {
    for (std::size_t k = i + 1; k < sites; ++k) {
      for (Pauli a : {Pauli::X, Pauli::Y, Pauli::Z}) {
        for (Pauli b : {Pauli::X, Pauli::Y, Pauli::Z}) couplings.push_back({normal(rng), {{i, a}, {k, b}}});
      }
    }
  }
  const double norm = hermitian_eigenvalues(build_dense(couplings, m.dims)).cwiseAbs().maxCoeff();
  const double target = 0.999 * min_gap / ratio;
  for (OperatorTerm& t : couplings) {
    t.coefficient *= target / norm;
    m.terms.push_back(std::move(t));
  }
  return m;
}

}  // namespace frustra
