#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sepscan/error.hpp"
#include "sepscan/onesided.hpp"
#include "sepscan/states.hpp"

using namespace sepscan;

namespace {

DensityMatrix mix(double p, const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.m(), a.n(), ComplexMatrix(p * a.matrix() + (1.0 - p) * b.matrix()));
}

double vn_entropy(const ComplexMatrix& h) {
  const Eigen::VectorXd ev = oracle::eigenvalues(h);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 1e-15) s -= ev(i) * std::log(ev(i));
  return s;
}

}  // namespace

TEST(Ppt, Examples) {
  const Verdict b = ppt_test(bell());
  EXPECT_EQ(b.outcome, Outcome::Entangled);
  EXPECT_TRUE(b.exact);
  EXPECT_EQ(b.reason, "ppt");
  EXPECT_NEAR(*b.detail, -0.5, 1e-12);

  const Verdict mm = ppt_test(maxmixed(2, 2));
  EXPECT_EQ(mm.outcome, Outcome::SeparableAssured);
  EXPECT_TRUE(mm.exact);

  EXPECT_EQ(ppt_test(maxmixed(3, 3)).outcome, Outcome::Unknown);
}

TEST(Reduction, Examples) {
  const Verdict b = reduction_test(bell());
  EXPECT_EQ(b.outcome, Outcome::Entangled);
  EXPECT_NEAR(*b.detail, -0.5, 1e-12);
  EXPECT_EQ(reduction_test(maxmixed(2, 2)).outcome, Outcome::Unknown);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const ComplexVector v = oracle::kron(oracle::random_unit(2, rng), oracle::random_unit(3, rng));
    EXPECT_EQ(reduction_test(DensityMatrix(2, 3, outer(v))).outcome, Outcome::Unknown);
  }
}

TEST(Entropic, Examples) {
  EXPECT_EQ(entropic_test(bell(), 2).outcome, Outcome::Entangled);
  EXPECT_EQ(entropic_test(maxmixed(2, 2), 2).outcome, Outcome::Unknown);
  EXPECT_THROW(entropic_test(bell(), 3), InputError);

  // Werner w = 0.5: collision entropies computed by hand from the spectrum
  // {(1+3w)/4, (1-w)/4 x3} against the maximally mixed marginal.
  const double w = 0.5;
  const double p0 = (1 + 3 * w) / 4;
  const double p1 = (1 - w) / 4;
  const double s2 = -std::log(p0 * p0 + 3 * p1 * p1);
  const Verdict v = entropic_test(werner(w), 2);
  EXPECT_NEAR(*v.detail, s2 - std::log(2.0), 1e-10);
  EXPECT_EQ(v.outcome, s2 < std::log(2.0) ? Outcome::Entangled : Outcome::Unknown);

  // alpha = 1 against an independent von Neumann entropy.
  const DensityMatrix rho = werner(0.7);
  const double ref = vn_entropy(rho.matrix()) - vn_entropy(partial_trace(rho, Subsystem::B).matrix());
  EXPECT_NEAR(*entropic_test(rho, 1).detail, ref, 1e-10);
}

TEST(Entropy, ZeroLogZero) {
  RealVector p(3);
  p << 1.0, 0.0, 0.0;
  EXPECT_EQ(entropy(p, 1), 0.0);
  EXPECT_NEAR(entropy(p, 2), 0.0, 1e-15);
}

TEST(Majorization, Examples) {
  EXPECT_EQ(majorization_test(bell()).outcome, Outcome::Entangled);
  EXPECT_EQ(majorization_test(maxmixed(2, 2)).outcome, Outcome::Unknown);
}

TEST(Ccnr, Examples) {
  const Verdict b = ccnr_test(bell());
  EXPECT_EQ(b.outcome, Outcome::Entangled);
  EXPECT_NEAR(*b.detail, 2.0, 1e-10);
  std::mt19937_64 rng(2);
  const ComplexVector v = oracle::kron(oracle::random_unit(2, rng), oracle::random_unit(2, rng));
  const Verdict p = ccnr_test(DensityMatrix(2, 2, outer(v)));
  EXPECT_EQ(p.outcome, Outcome::Unknown);
  EXPECT_NEAR(*p.detail, 1.0, 1e-10);
  const Verdict mm = ccnr_test(maxmixed(2, 2));
  EXPECT_NEAR(*mm.detail, 0.5, 1e-12);
}

TEST(FrobeniusBall, Examples) {
  EXPECT_EQ(frobenius_ball_test(maxmixed(2, 2)).outcome, Outcome::SeparableAssured);
  const Verdict b = frobenius_ball_test(bell());
  EXPECT_EQ(b.outcome, Outcome::Unknown);
  EXPECT_NEAR(*b.detail, 0.75, 1e-12);
  const DensityMatrix near = mix(0.05, bell(), maxmixed(2, 2));
  const Verdict v = frobenius_ball_test(near);
  EXPECT_NEAR(*v.detail, 0.05 * 0.05 * 0.75, 1e-12);
  EXPECT_EQ(v.outcome, Outcome::SeparableAssured);
}

TEST(LambdaMinBall, Examples) {
  EXPECT_EQ(lambda_min_ball_test(maxmixed(2, 2)).outcome, Outcome::SeparableAssured);
  EXPECT_EQ(lambda_min_ball_test(bell()).outcome, Outcome::Unknown);
  const Verdict v = lambda_min_ball_test(maxmixed(3, 3));
  EXPECT_EQ(v.outcome, Outcome::SeparableAssured);
  EXPECT_NEAR(*v.detail, 1.0 / 9.0, 1e-12);
}

TEST(TwoByN, Examples) {
  EXPECT_EQ(two_by_n_pt_test(maxmixed(2, 2)).outcome, Outcome::SeparableAssured);
  EXPECT_EQ(two_by_n_pt_test(bell()).outcome, Outcome::Unknown);
  ComplexMatrix d = ComplexMatrix::Zero(6, 6);
  for (int i = 0; i < 6; ++i) d(i, i) = (i + 1) / 21.0;
  EXPECT_EQ(two_by_n_pt_test(DensityMatrix(2, 3, d)).outcome, Outcome::SeparableAssured);
  EXPECT_THROW(two_by_n_pt_test(maxmixed(3, 2)), InputError);
}

TEST(Pipeline, Examples) {
  const Verdict b = pipeline(bell());
  EXPECT_EQ(b.outcome, Outcome::Entangled);
  EXPECT_EQ(b.reason, "ppt");
  const Verdict mm = pipeline(maxmixed(2, 2));
  EXPECT_EQ(mm.outcome, Outcome::SeparableAssured);
  EXPECT_EQ(mm.reason, "frobenius_ball");
  const Verdict w = pipeline(werner(0.4));
  EXPECT_EQ(w.outcome, Outcome::Entangled);
  EXPECT_TRUE(w.exact);
  EXPECT_EQ(w.reason, "ppt");
}

TEST(Pipeline, WernerThresholdMatchesPptEigenvalue) {
  for (double w = 0.0; w <= 1.0; w += 0.025) {
    const double lmin = (1.0 - 3.0 * w) / 4.0;
    const Verdict v = ppt_test(werner(w));
    if (lmin < -1e-6) EXPECT_EQ(v.outcome, Outcome::Entangled) << w;
    if (lmin > 1e-6) EXPECT_EQ(v.outcome, Outcome::SeparableAssured) << w;
    EXPECT_NEAR(*v.detail, lmin, 1e-10);
  }
}

// No necessary test ever flags an explicit product mixture.
TEST(Soundness, ConstructedSeparablesNeverEntangled) {
  std::mt19937_64 rng(77);
  int count = 0;
  for (int m = 2; m <= 3; ++m)
    for (int n = 2; n <= 3; ++n)
      for (int t = 0; t < 60; ++t) {
        const int terms = 1 + t % 8;
        const DensityMatrix rho = from_decomposition(m, n, random_product_decomposition(m, n, terms, rng));
        for (const Verdict& v : {ppt_test(rho), reduction_test(rho), entropic_test(rho, 1), entropic_test(rho, 2),
                                 majorization_test(rho), ccnr_test(rho), pipeline(rho)}) {
          EXPECT_NE(v.outcome, Outcome::Entangled) << v.reason << " m=" << m << " n=" << n << " t=" << t;
        }
        ++count;
      }
  EXPECT_GE(count, 200);
}

// Sufficient tests never assert separability of a PPT-violating state.
TEST(Soundness, SufficientTestsNeverClaimNptStates) {
  std::mt19937_64 rng(78);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix rho = oracle::random_density(6, rng);
    const DensityMatrix d(2, 3, rho);
    const double lmin = oracle::lambda_min(oracle::partial_transpose_b(rho, 2, 3));
    if (lmin >= -1e-9) continue;
    EXPECT_NE(frobenius_ball_test(d).outcome, Outcome::SeparableAssured);
    EXPECT_NE(lambda_min_ball_test(d).outcome, Outcome::SeparableAssured);
    EXPECT_NE(two_by_n_pt_test(d).outcome, Outcome::SeparableAssured);
  }
}

TEST(Verdict, OutcomeNames) {
  for (Outcome o : {Outcome::Entangled, Outcome::SeparableAssured, Outcome::Unknown}) {
    EXPECT_EQ(outcome_from_string(to_string(o)), o);
  }
  EXPECT_THROW(outcome_from_string("maybe"), InputError);
}
