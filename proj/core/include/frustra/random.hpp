#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "frustra/entanglement.hpp"
#include "frustra/hamiltonian.hpp"

namespace frustra {

using Rng = std::mt19937_64;

/// Entries with independent standard complex normal distribution (E|z|^2 = 1).
ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// (G + G^dagger) / 2 for a complex Gaussian G.
ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng);

/// Random Hermitian matrix rescaled to the given operator norm.
ComplexMatrix random_hermitian_with_norm(Eigen::Index dim, double norm, Rng& rng);

/// Haar-distributed unitary (QR of a complex Gaussian with phase correction).
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng);

PureState random_state(const std::vector<int>& dims, Rng& rng);

/// Orthogonal basis of the d x d Hermitian matrices: diagonal units, then
/// symmetric and antisymmetric off-diagonal pairs.
std::vector<ComplexMatrix> hermitian_operator_basis(int d);

/// Two d-level sites: one explicit random Hermitian local term per site and a
/// generic two-body coupling sum_ab c_ab G_a (x) G_b with Gaussian c_ab.
SpinModel random_two_site_model(int d, Rng& rng, double local_scale = 1.0, double coupling_scale = 1.0);

/// Qubit chain with random local terms whose gaps lie in [1, 3] and random
/// Pauli couplings on every pair, rescaled so that every local gap is at
/// least `ratio` times ||H_I||_op.
SpinModel random_weakly_coupled_qubits(std::size_t sites, Rng& rng, double ratio = 10.0);

}  // namespace frustra
