#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sepscan/error.hpp"
#include "sepscan/qsep.hpp"
#include "sepscan/states.hpp"

using namespace sepscan;

namespace {

QVector basis_q(int d, int i) {
  QVector v(static_cast<size_t>(d));
  v[static_cast<size_t>(i)] = QComplex(1);
  return v;
}

QMatrix diag_q(const std::vector<Rational>& d) {
  QMatrix q(static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) q(static_cast<int>(i), static_cast<int>(i)) = QComplex(d[i]);
  return q;
}

QsepCertificate padded(int m, int n, std::vector<QsepTerm> terms) {
  QsepCertificate c{m, n, std::move(terms)};
  while (c.terms.size() < static_cast<size_t>(m * m * n * n)) {
    c.terms.push_back({Rational(0), QVector(static_cast<size_t>(m)), QVector(static_cast<size_t>(n))});
  }
  return c;
}

// |a|_inf error of truncating toward zero
Rational max_scalar_error(const std::vector<QsepTerm>& exact, const QsepCertificate& cert) {
  Rational worst = 0;
  auto upd = [&](const Rational& a, const Rational& b) {
    Rational e = a - b;
    if (e < 0) e = -e;
    if (e > worst) worst = e;
  };
  for (size_t i = 0; i < exact.size(); ++i) {
    upd(exact[i].weight, cert.terms[i].weight);
    for (size_t j = 0; j < exact[i].alpha.size(); ++j) {
      upd(exact[i].alpha[j].re, cert.terms[i].alpha[j].re);
      upd(exact[i].alpha[j].im, cert.terms[i].alpha[j].im);
    }
    for (size_t j = 0; j < exact[i].beta.size(); ++j) {
      upd(exact[i].beta[j].re, cert.terms[i].beta[j].re);
      upd(exact[i].beta[j].im, cert.terms[i].beta[j].im);
    }
  }
  return worst;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-5"), Rational(-5));
  EXPECT_EQ(to_string(parse_rational("10/-4")), "-5/2");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational("1.5"), InputError);
  EXPECT_EQ(pow2(-3), Rational(1, 8));
  EXPECT_EQ(exact_from_double(0.375), Rational(3, 8));
}

TEST(Bits, CertificateBitsAndWidth) {
  EXPECT_EQ(certificate_bits(Rational(1)), 0);
  EXPECT_EQ(certificate_bits(Rational(1, 1024)), 10);
  EXPECT_EQ(certificate_bits(Rational(1, 1000)), 10);
  EXPECT_THROW(certificate_bits(Rational(0)), InputError);
  EXPECT_TRUE(is_p_bit(Rational(85, 256), 8));
  EXPECT_FALSE(is_p_bit(Rational(85, 256), 7));
  EXPECT_FALSE(is_p_bit(Rational(1, 3), 30));
  EXPECT_FALSE(is_p_bit(Rational(3, 2), 4));
  EXPECT_TRUE(is_p_bit(Rational(-1), 0));
}

TEST(Truncate, Examples) {
  EXPECT_EQ(truncate_to_bits(Rational(1, 2), 1), Rational(1, 2));
  EXPECT_EQ(truncate_to_bits(Rational(1, 3), 8), Rational(85, 256));
  EXPECT_EQ(truncate_to_bits(Rational(-1, 3), 8), Rational(-85, 256));
  EXPECT_EQ(truncate_to_bits(1.0 / 3.0, 8), Rational(85, 256));
  EXPECT_THROW(truncate_to_bits(Rational(2), 8), InputError);
  EXPECT_THROW(truncate_to_bits(Rational(1, 2), 0), InputError);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> num(-999999, 999999);
  for (int t = 0; t < 200; ++t) {
    const Rational x(num(rng), 1000000);
    for (int p : {3, 12, 20}) {
      const Rational y = truncate_to_bits(x, p);
      Rational err = x - y;
      if (err < 0) err = -err;
      EXPECT_LT(err, pow2(-p));
      EXPECT_TRUE(is_p_bit(y, p));
      EXPECT_LE(y * y, x * x);  // toward zero
    }
  }
}

TEST(Verify, ExactDiagonalDecomposition) {
  QsepInstance inst{2, 2, diag_q({Rational(1, 2), 0, 0, Rational(1, 2)}), Rational(1, 4), Rational(1, 8),
                    Rational(1, 8)};
  const QsepCertificate cert = padded(2, 2,
                                      {{Rational(1, 2), basis_q(2, 0), basis_q(2, 0)},
                                       {Rational(1, 2), basis_q(2, 1), basis_q(2, 1)}});
  const QsepVerification v = verify_certificate(inst, cert);
  EXPECT_TRUE(v.accepted);
  EXPECT_EQ(v.normalization_defect, 0);
  EXPECT_EQ(v.distance_sq, 0);
}

TEST(Verify, ZeroCertificateFailsDistance) {
  QsepInstance inst{2, 2, diag_q({Rational(1, 2), 0, 0, Rational(1, 2)}), Rational(1, 4), Rational(1, 8),
                    Rational(1, 8)};
  const QsepVerification v = verify_certificate(inst, padded(2, 2, {}));
  EXPECT_FALSE(v.accepted);
  EXPECT_FALSE(v.distance_ok);
  EXPECT_TRUE(v.normalization_ok);  // zero terms are exempt
  EXPECT_EQ(v.distance_sq, Rational(1, 2));
}

TEST(Verify, RejectsMalformedCertificates) {
  QsepInstance inst{2, 2, diag_q({Rational(1, 2), 0, 0, Rational(1, 2)}), Rational(1, 4), Rational(1, 8),
                    Rational(1, 8)};
  QsepCertificate short_cert{2, 2, {}};
  EXPECT_THROW(verify_certificate(inst, short_cert), InputError);
  QsepCertificate wide = padded(2, 2, {{Rational(1, 8), basis_q(2, 0), basis_q(2, 0)}});
  EXPECT_THROW(verify_certificate(inst, wide), InputError);  // 1/8 needs 3 bits, p = 2
  QsepCertificate dims = padded(2, 2, {});
  dims.terms[0].alpha = basis_q(3, 0);
  EXPECT_THROW(verify_certificate(inst, dims), InputError);
  QsepCertificate neg = padded(2, 2, {{Rational(-1, 4), basis_q(2, 0), basis_q(2, 0)}});
  EXPECT_THROW(verify_certificate(inst, neg), InputError);
}

// A floating-point implementation cannot separate these two instances: the
// tolerance differs by 10^-40 around the exact residual.
TEST(Verify, ExactnessAtTheBoundary) {
  const QMatrix rho = diag_q({Rational(1, 3), Rational(1, 6), Rational(1, 6), Rational(1, 3)});
  const QsepCertificate cert = padded(2, 2,
                                      {{Rational(1, 2), basis_q(2, 0), basis_q(2, 0)},
                                       {Rational(1, 2), basis_q(2, 1), basis_q(2, 1)}});
  // distance^2 = 2 (1/6)^2 + 2 (1/6)^2 = 1/9, distance = 1/3 exactly
  const Rational tiny = Rational(1) / Rational(Integer("10000000000000000000000000000000000000000"));
  QsepInstance at{2, 2, rho, Rational(1, 4), Rational(1, 8), Rational(1, 3)};
  QsepInstance above = at;
  above.delta_prime = Rational(1, 3) + tiny;
  QsepInstance below = at;
  below.delta_prime = Rational(1, 3) - tiny;
  EXPECT_EQ(verify_certificate(at, cert).distance_sq, Rational(1, 9));
  EXPECT_FALSE(verify_certificate(at, cert).accepted);
  EXPECT_TRUE(verify_certificate(above, cert).accepted);
  EXPECT_FALSE(verify_certificate(below, cert).accepted);
  ASSERT_EQ((above.delta_prime).get_d(), (below.delta_prime).get_d());
}

TEST(Bounds, Formulas) {
  EXPECT_NEAR(error_bound_sigma(2, 2, 16), 64.0 * std::pow(2.0, -8.5), 1e-15);
  EXPECT_NEAR(error_bound_sigma(2, 2, 16), 0.17678, 1e-5);
  EXPECT_NEAR(error_bound_sigma(2, 2, 24), 6.9e-4, 1e-5);
  EXPECT_NEAR(error_bound_sigma(2, 3, 20), 0.0373, 1e-4);
  EXPECT_DOUBLE_EQ(error_bound_normalization(2, 2, 16), 0.03125);
  EXPECT_DOUBLE_EQ(error_bound_normalization(2, 2, 10), 2.0);
  EXPECT_NEAR(error_bound_normalization(3, 3, 20), 0.02225, 1e-5);
  EXPECT_EQ(error_bound_sigma_sq(2, 2, 16), Rational(64 * 64) * pow2(-17));
  EXPECT_EQ(error_bound_normalization_exact(2, 2, 16), Rational(1, 32));
}

TEST(Reduction, BitsAndConstants) {
  EXPECT_EQ(reduction_bits(2, 2, Rational(1)), 15);
  EXPECT_EQ(reduction_bits(2, 2, Rational(1, 2)), 16);
  for (int m = 2; m <= 3; ++m) {
    Rational delta(1, 10);
    int prev = reduction_bits(m, 2, delta);
    for (int h = 0; h < 6; ++h) {
      delta /= 2;
      const int p = reduction_bits(m, 2, delta);
      EXPECT_EQ(p, prev + 1);
      prev = p;
    }
  }
  const QMatrix rho = diag_q({Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  for (const Rational& delta : {Rational(1), Rational(1, 7), Rational(3, 1000)}) {
    const QsepInstance inst = reduce_wmem_to_qsep(2, 2, rho, delta);
    EXPECT_LE(inst.eps_prime + inst.delta_prime, delta);
    EXPECT_EQ(inst.delta_p, pow2(-reduction_bits(2, 2, delta)));
  }
  QMatrix bad = rho;
  bad(0, 0).re = Rational(1, 2);
  EXPECT_THROW(reduce_wmem_to_qsep(2, 2, bad, Rational(1)), InputError);
}

TEST(WmemShift, Examples) {
  const WmemShift mm = wmem_out_to_wmem(maxmixed(2, 2), 0.3);
  EXPECT_NEAR((mm.rho0.matrix() - ComplexMatrix::Identity(4, 4) / 4.0).norm(), 0.0, 1e-15);
  EXPECT_NEAR(mm.delta0, 0.3 / (2.0 * std::sqrt(12.0)), 1e-15);
  const WmemShift s = wmem_out_to_wmem(bell(), 0.12);
  EXPECT_NEAR(s.delta0, 0.017321, 1e-6);
  EXPECT_NEAR(s.rho0.trace(), 1.0, 1e-12);
  const double moved = (s.rho0.matrix() - bell().matrix()).norm();
  EXPECT_NEAR(moved, 0.06 * (bell().matrix() - ComplexMatrix::Identity(4, 4) / 4.0).norm(), 1e-12);
  EXPECT_LE(moved, 0.06 + 1e-12);
  EXPECT_LT(s.lambda_min, 0.0);  // pure states leave the PSD cone
}

TEST(RandomRational, ExactUnitVectorsAndWeights) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    EXPECT_EQ(norm2(random_rational_unit_vector(3, 6, rng)), 1);
  }
  const auto d = random_rational_decomposition(2, 3, 5, 6, rng);
  Rational total = 0;
  for (const auto& t : d) total += t.weight;
  EXPECT_EQ(total, 1);
}

// End to end: random exact separable states, truncated at the reduction's p,
// always certify and respect both proposition bounds.
TEST(Soundness, TruncatedCertificatesVerify) {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 2;
    const int terms = 1 + t % 6;
    const auto exact = random_rational_decomposition(2, n, terms, 8, rng);
    const QMatrix rho = certificate_sigma(2, n, exact);
    ASSERT_EQ(rho.trace_real(), 1);
    const Rational delta = t % 3 == 0 ? Rational(1) : (t % 3 == 1 ? Rational(1, 4) : Rational(1, 64));
    const QsepInstance inst = reduce_wmem_to_qsep(2, n, rho, delta);
    const int p = certificate_bits(inst.delta_p);
    const QsepCertificate cert = truncate_decomposition(2, n, exact, p);
    EXPECT_LT(max_scalar_error(exact, cert), pow2(-p));
    const QsepVerification v = verify_certificate(inst, cert);
    EXPECT_TRUE(v.accepted) << t;
    EXPECT_LT(v.distance_sq, error_bound_sigma_sq(2, n, p));
    EXPECT_LT(v.normalization_defect, error_bound_normalization_exact(2, n, p));
    ++checked;
  }
  EXPECT_EQ(checked, 50);
}

TEST(Truncate, FromDoubleDecomposition) {
  std::mt19937_64 rng(3);
  const auto d = random_product_decomposition(2, 2, 3, rng);
  const QsepCertificate c = truncate_decomposition(2, 2, d, 16);
  EXPECT_EQ(c.terms.size(), 16u);
  for (const auto& t : c.terms) EXPECT_TRUE(is_p_bit(t.weight, 16));
  EXPECT_TRUE(c.terms.back().is_zero());
  std::vector<ProductTerm> many(17, d.front());
  EXPECT_THROW(truncate_decomposition(2, 2, many, 16), InputError);
}
