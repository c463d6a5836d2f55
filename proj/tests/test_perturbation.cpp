#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "frustra/models.hpp"
#include "frustra/perturbation.hpp"
#include "frustra/random.hpp"
#include "oracles/oracles.hpp"
#include "support/error_kind.hpp"

using namespace frustra;

namespace {

PerturbationInstance two_level(double eps) {
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(1, 1) = 1.0;
  return make_hermitian_instance(b, eps * oracle::pauli_x(), select::Ground{}, select::Values{{1.0}});
}

ComplexMatrix rank_one(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace

TEST(HermitianInstance, TwoLevelExample) {
  const double eps = 0.01;
  const PerturbationInstance inst = two_level(eps);
  EXPECT_NEAR(inst.a.real(), 0.5 - std::sqrt(0.25 + eps * eps), 1e-15);
  EXPECT_NEAR(inst.delta_a, 1.0 - inst.a.real(), 1e-15);
  EXPECT_NEAR(inst.delta_a, 1.0001, 1e-4);
  const PerturbationCheckReport r = check_theorem(inst);
  ASSERT_EQ(r.canonical_cosines.size(), 1u);
  EXPECT_NEAR(r.canonical_cosines[0], oracle::rotation_sine(eps), 1e-12);
  EXPECT_NEAR(r.canonical_cosines[0], 0.0099985004, 1e-10);
  EXPECT_LE(r.canonical_cosines[0], eps / inst.delta_a);
  EXPECT_TRUE(r.passes());
}

TEST(HermitianInstance, SharpnessWitness) {
  const double eps = 1e-3;
  const PerturbationInstance inst = two_level(eps);
  const PerturbationCheckReport r = check_theorem(inst);
  EXPECT_GE(r.canonical_cosines[0] * inst.delta_a / eps, 0.99);
}

TEST(HermitianInstance, ZeroPerturbationIsExact) {
  Rng rng(1);
  const ComplexMatrix b = random_hermitian(6, rng);
  const PerturbationInstance inst = make_hermitian_instance(b, ComplexMatrix::Zero(6, 6));
  const PerturbationCheckReport r = check_theorem(inst);
  EXPECT_NEAR(r.op_ineq_margin, 0.0, 1e-12);
  for (const auto& t : r.norm_chain) {
    EXPECT_NEAR(t.pq, 0.0, 1e-12);
    EXPECT_EQ(t.c, 0.0);
  }
  EXPECT_TRUE(r.passes());
}

TEST(HermitianInstance, InvariantsHold) {
  Rng rng(2);
  const ComplexMatrix b = random_hermitian(8, rng);
  const ComplexMatrix c = random_hermitian_with_norm(8, 0.1, rng);
  const PerturbationInstance inst = make_hermitian_instance(b, c);
  const double scale = instance_scale(inst);
  EXPECT_LE((inst.A - inst.B - inst.C).norm(), 1e-12 * scale);
  EXPECT_TRUE(is_projector(inst.P_a));
  EXPECT_TRUE(is_projector(inst.Q));
  EXPECT_LE((inst.P_a * inst.A - inst.a * inst.P_a).norm(), 1e-9 * scale);
  EXPECT_LE((inst.Q * inst.B - inst.B * inst.Q).norm(), 1e-9 * scale);
  EXPECT_EQ(inst.beta.size(), 4u);
  EXPECT_NEAR(inst.Q.trace().real(), 4.0, 1e-12);
  EXPECT_NO_THROW(validate(inst));
  EXPECT_NEAR(ui_norm(c, NormKind::Operator), 0.1, 1e-12);
}

TEST(HermitianInstance, RandomTrialsPass) {
  Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    const int dim = std::vector<int>{4, 8, 16}[t % 3];
    const double norm = std::vector<double>{0.01, 0.1, 1.0}[(t / 3) % 3];
    const PerturbationInstance inst =
        make_hermitian_instance(random_hermitian(dim, rng), random_hermitian_with_norm(dim, norm, rng));
    const PerturbationCheckReport r = check_theorem(inst);
    EXPECT_TRUE(r.margin_ok()) << t << " margin " << r.op_ineq_margin;
    EXPECT_TRUE(r.dominance_ok) << t;
    for (const auto& triple : r.norm_chain) EXPECT_TRUE(triple.nondecreasing(1e-9)) << t << to_string(triple.kind);
    EXPECT_TRUE(r.cosines_ok());
  }
}

TEST(HermitianInstance, SelectorsAndErrors) {
  ComplexMatrix b = ComplexMatrix::Zero(3, 3);
  b.diagonal() << 0.0, 1.0, 2.0;
  Rng rng(4);
  const ComplexMatrix c = random_hermitian_with_norm(3, 0.05, rng);
  const PerturbationInstance by_index = make_hermitian_instance(b, c, select::Index{2}, select::Indices{{0}});
  EXPECT_GT(by_index.a.real(), 1.5);
  EXPECT_EQ(by_index.beta.size(), 1u);
  EXPECT_EQ(by_index.beta[0], Complex(0.0, 0.0));
  EXPECT_EQ(kind_of([&] { make_hermitian_instance(b, c, select::Index{3}); }), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(kind_of([&] { make_hermitian_instance(b, c, select::Ground{}, select::Values{{0.5}}); }),
            ErrorKind::InvalidArgument);
  // a coincides with an eigenvalue of B in beta.
  const PerturbationInstance zero_c = make_hermitian_instance(b, ComplexMatrix::Zero(3, 3), select::Ground{},
                                                              select::Values{{0.0, 2.0}});
  EXPECT_EQ(kind_of([&] { check_theorem(zero_c); }), ErrorKind::DegenerateSeparation);
}

TEST(NormalInstance, SmokeTest) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const int n = 4 + 2 * (t % 3);
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexVector b = random_gaussian(n, 1, rng).col(0);
    const ComplexVector alpha = b + 0.05 * ComplexVector(random_gaussian(n, 1, rng).col(0));
    // Cayley transform of a small Hermitian generator: a unitary close to the identity.
    const ComplexMatrix g = Complex(0.0, 0.05) * random_hermitian(n, rng);
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix rot = (id + g) * (id - g).inverse();
    const PerturbationInstance inst = make_normal_instance(rot * u, alpha, u, b, 0, {1, 2});
    EXPECT_NO_THROW(validate(inst));
    const PerturbationCheckReport r = check_theorem(inst);
    EXPECT_TRUE(r.passes()) << t << " margin " << r.op_ineq_margin;
  }
}

TEST(CanonicalCosines, ElementaryCases) {
  ComplexVector e0 = ComplexVector::Unit(2, 0);
  ComplexVector e1 = ComplexVector::Unit(2, 1);
  const auto same = canonical_cosines(rank_one(e0), rank_one(e0));
  ASSERT_EQ(same.size(), 1u);
  EXPECT_EQ(same[0], 1.0);
  const auto orth = canonical_cosines(rank_one(e0), rank_one(e1));
  ASSERT_EQ(orth.size(), 1u);
  EXPECT_NEAR(orth[0], 0.0, 1e-15);
  const double theta = std::numbers::pi / 6.0;
  ComplexVector tilted(2);
  tilted << std::cos(theta), std::sin(theta);
  const auto c = canonical_cosines(rank_one(e0), rank_one(tilted));
  EXPECT_NEAR(c[0], 0.8660254, 1e-7);
  EXPECT_NEAR(c[0], std::cos(theta), 1e-14);
}

TEST(CanonicalCosines, RankLimitedAndOrdered) {
  Rng rng(6);
  const ComplexMatrix u = random_unitary(6, rng);
  const ComplexMatrix v = random_unitary(6, rng);
  const auto c = canonical_cosines(projector_onto(u.leftCols(2)), projector_onto(v.leftCols(3)));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_GE(c[0], c[1]);
  for (double x : c) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 1.0);
  }
  EXPECT_EQ(kind_of([&] { canonical_cosines(2.0 * projector_onto(u.leftCols(2)), projector_onto(v.leftCols(3))); }),
            ErrorKind::NotProjector);
}

TEST(DkChain, IsingGroundAtStrongField) {
  const Splitting s = split(ising2(2.0));
  const LocalSpectrum ls = local_spectrum(s);
  const ProductSubspace k = subspace_through(ls, std::vector<int>{0, 0}, 0);
  const DkChain chain = dk_entanglement_chain(s, 0, k);
  // Ground state: cos(t)|++> + sin(t)|--> with tan(2t) = 1/(2g); only |--> lies outside K.
  const double t = 0.5 * std::atan(1.0 / 4.0);
  EXPECT_NEAR(chain.pjq_norm, std::sin(t), 1e-10);
  EXPECT_NEAR(chain.entanglement, 0.5 - 2.0 / std::sqrt(17.0), 1e-8);
  EXPECT_TRUE(chain.holds());
}

TEST(DkChain, NoInteractionGivesZero) {
  SpinModel m;
  m.dims = {2, 2};
  m.terms = {{-0.5, {{0, Pauli::Z}}}, {-1.1, {{1, Pauli::Z}}}};
  const Splitting s = split(m);
  const LocalSpectrum ls = local_spectrum(s);
  for (std::size_t j = 0; j < 4; ++j) {
    const ProductSubspace k = subspace_through(ls, ls.product_basis[j].configuration, 0);
    const DkChain chain = dk_entanglement_chain(s, j, k);
    EXPECT_NEAR(chain.pjq_norm, 0.0, 1e-12);
    EXPECT_TRUE(chain.holds());
  }
}

TEST(DkChain, WeaklyCoupledModels) {
  Rng rng(7);
  for (int i = 0; i < 5; ++i) {
    const Splitting s = split(random_weakly_coupled_qubits(3, rng));
    const LocalSpectrum ls = local_spectrum(s);
    for (std::size_t j = 0; j < 8; ++j) {
      const DeltaJEnt d = delta_j_ent(ls, ls.product_basis[j].configuration);
      try {
        EXPECT_TRUE(dk_entanglement_chain(s, j, d.chosen).holds()) << i << " " << j;
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateSeparation);
      }
    }
  }
}
