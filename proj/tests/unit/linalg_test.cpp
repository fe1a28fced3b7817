#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sepscan/error.hpp"
#include "sepscan/linalg.hpp"
#include "sepscan/states.hpp"

using namespace sepscan;

namespace {

ComplexMatrix pauli_z() {
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

ComplexVector basis_vector(int d, int i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST(HermitianOp, SymmetrizesAndReportsResidual) {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0 + 1e-12;
  const HermitianOp h(x);
  EXPECT_NEAR(h.matrix()(0, 1).real(), 1.0 + 0.5e-12, 1e-15);
  EXPECT_GT(h.symmetrization_residual(), 0.0);
}

TEST(HermitianOp, RejectsNonHermitian) {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  EXPECT_THROW(HermitianOp{x}, InputError);
}

TEST(DensityMatrix, RejectsBadTraceAndNegativeSpectrum) {
  EXPECT_THROW(DensityMatrix(2, 2, ComplexMatrix::Identity(4, 4)), InputError);
  ComplexMatrix x = ComplexMatrix::Zero(4, 4);
  x(0, 0) = 1.5;
  x(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(2, 2, x), InputError);
  EXPECT_THROW(DensityMatrix(2, 3, ComplexMatrix::Identity(4, 4) / 4.0), InputError);
}

TEST(Eigensolver, IdentityAndPauliZ) {
  const RealVector ones = eigenvalues(HermitianOp::identity(5));
  for (Eigen::Index i = 0; i < ones.size(); ++i) EXPECT_NEAR(ones(i), 1.0, 1e-14);
  const RealVector zz = eigenvalues(HermitianOp(kron(pauli_z(), ComplexMatrix::Identity(2, 2))));
  EXPECT_NEAR(zz(0), 1.0, 1e-14);
  EXPECT_NEAR(zz(1), 1.0, 1e-14);
  EXPECT_NEAR(zz(2), -1.0, 1e-14);
  EXPECT_NEAR(zz(3), -1.0, 1e-14);
}

TEST(Eigensolver, ReconstructionAndOracleAgreement) {
  std::mt19937_64 rng(11);
  for (int d : {1, 2, 3, 6, 9, 16, 25, 36}) {
    const ComplexMatrix h = oracle::random_hermitian(d, rng);
    const EigDecomposition e = eig_hermitian(HermitianOp(h));
    const ComplexMatrix rec = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
    EXPECT_LE((rec - h).norm(), 1e-8 * d) << "d=" << d;
    EXPECT_LE((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(d, d)).norm(), 1e-9 * d);
    const Eigen::VectorXd ref = oracle::eigenvalues(h);
    for (int i = 0; i < d; ++i) EXPECT_NEAR(e.values(i), ref(d - 1 - i), 1e-9);
    for (int i = 1; i < d; ++i) EXPECT_GE(e.values(i - 1), e.values(i));
  }
}

TEST(PartialTrace, ProductBellAndMaxMixed) {
  const ComplexVector v = kron(basis_vector(2, 0), basis_vector(2, 1));
  const HermitianOp prod(outer(v));
  const HermitianOp ra = partial_trace(prod, 2, 2, Subsystem::B);
  EXPECT_NEAR((ra.matrix() - outer(basis_vector(2, 0))).norm(), 0.0, 1e-14);

  const HermitianOp rb = partial_trace(bell(), Subsystem::B);
  EXPECT_NEAR((rb.matrix() - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 0.0, 1e-14);

  const DensityMatrix mm = maxmixed(2, 3);
  EXPECT_NEAR((partial_trace(mm, Subsystem::A).matrix() - ComplexMatrix::Identity(3, 3) / 3.0).norm(), 0.0, 1e-14);
  EXPECT_NEAR((partial_trace(mm, Subsystem::B).matrix() - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 0.0, 1e-14);
}

TEST(PartialTrace, TracePreservedOnRandomStates) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix rho = oracle::random_density(6, rng);
    EXPECT_NEAR(partial_trace(HermitianOp(rho), 2, 3, Subsystem::A).trace(), 1.0, 1e-12);
    EXPECT_NEAR(partial_trace(HermitianOp(rho), 3, 2, Subsystem::B).trace(), 1.0, 1e-12);
  }
}

TEST(PartialTranspose, DiagonalUnchangedAndBellSpectrum) {
  ComplexMatrix d = ComplexMatrix::Zero(6, 6);
  for (int i = 0; i < 6; ++i) d(i, i) = 0.1 * (i + 1);
  const HermitianOp diag(d);
  EXPECT_NEAR((partial_transpose(diag, 2, 3, Subsystem::B).matrix() - d).norm(), 0.0, 1e-15);

  const RealVector ev = eigenvalues(partial_transpose(bell().op(), 2, 2, Subsystem::B));
  EXPECT_NEAR(ev(0), 0.5, 1e-12);
  EXPECT_NEAR(ev(1), 0.5, 1e-12);
  EXPECT_NEAR(ev(2), 0.5, 1e-12);
  EXPECT_NEAR(ev(3), -0.5, 1e-12);
}

TEST(PartialTranspose, MatchesIndexOracleAndSidesShareSpectrum) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const int m = 2 + t % 2;
    const int n = 2 + (t / 2) % 2;
    const ComplexMatrix rho = oracle::random_density(m * n, rng);
    const HermitianOp op(rho);
    const ComplexMatrix tb = partial_transpose(op, m, n, Subsystem::B).matrix();
    const ComplexMatrix ta = partial_transpose(op, m, n, Subsystem::A).matrix();
    EXPECT_NEAR((tb - oracle::partial_transpose_b(rho, m, n)).norm(), 0.0, 1e-14);
    EXPECT_NEAR((ta - oracle::partial_transpose_a(rho, m, n)).norm(), 0.0, 1e-14);
    const Eigen::VectorXd sa = oracle::eigenvalues(ta);
    const Eigen::VectorXd sb = oracle::eigenvalues(tb);
    EXPECT_LE((sa - sb).norm(), 1e-8);
  }
}

TEST(Realign, ProductIsRankOne) {
  std::mt19937_64 rng(8);
  const ComplexMatrix a = oracle::random_hermitian(2, rng);
  const ComplexMatrix b = oracle::random_hermitian(3, rng);
  const ComplexMatrix r = realign(HermitianOp(oracle::kron(a, b)), 2, 3);
  ASSERT_EQ(r.rows(), 4);
  ASSERT_EQ(r.cols(), 9);
  const Eigen::VectorXd sv = oracle::singular_values(r);
  EXPECT_NEAR(sv(0), a.norm() * b.norm(), 1e-12);
  for (Eigen::Index i = 1; i < sv.size(); ++i) EXPECT_NEAR(sv(i), 0.0, 1e-12);
}

TEST(Realign, TraceNormsOfMaxMixedAndBell) {
  const ComplexMatrix rm = realign(maxmixed(2, 2).op(), 2, 2);
  EXPECT_NEAR(trace_norm(rm), oracle::singular_values(rm).sum(), 1e-9);
  EXPECT_NEAR(trace_norm(rm), 0.5, 1e-12);
  EXPECT_NEAR(trace_norm(realign(bell().op(), 2, 2)), 2.0, 1e-12);
}

TEST(TraceNorm, ZeroUnitaryAndRandom) {
  EXPECT_NEAR(trace_norm(ComplexMatrix::Zero(3, 3)), 0.0, 1e-15);
  std::mt19937_64 rng(9);
  EXPECT_NEAR(trace_norm(random_unitary(5, rng)), 5.0, 1e-10);
  std::normal_distribution<double> g;
  for (int t = 0; t < 10; ++t) {
    ComplexMatrix x(3, 5);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = {g(rng), g(rng)};
    EXPECT_NEAR(trace_norm(x), oracle::singular_values(x).sum(), 1e-8);
  }
}

TEST(UnnormalizedPure, Examples) {
  EXPECT_TRUE(is_unnormalized_pure(HermitianOp(0.5 * outer(basis_vector(2, 0))), 0.5, 1e-10));
  EXPECT_FALSE(is_unnormalized_pure(HermitianOp(ComplexMatrix::Identity(2, 2) / 2.0), std::sqrt(0.5), 1e-10));
  std::mt19937_64 rng(4);
  const ComplexVector psi = oracle::random_unit(3, rng);
  EXPECT_TRUE(is_unnormalized_pure(HermitianOp(0.3 * outer(psi)), 0.3, 1e-10));
  EXPECT_THROW(is_unnormalized_pure(HermitianOp::identity(2), 0.0, 1e-10), InputError);
  EXPECT_THROW(is_unnormalized_pure(HermitianOp::identity(2), 1.5, 1e-10), InputError);
}

TEST(LocalConjugate, PreservesSpectrum) {
  std::mt19937_64 rng(2);
  const ComplexMatrix rho = oracle::random_density(6, rng);
  const HermitianOp out = local_conjugate(HermitianOp(rho), random_unitary(2, rng), random_unitary(3, rng));
  EXPECT_LE((oracle::eigenvalues(out.matrix()) - oracle::eigenvalues(rho)).norm(), 1e-10);
}
