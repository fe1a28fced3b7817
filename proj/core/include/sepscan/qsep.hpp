#pragma once

#include <random>
#include <vector>

#include "sepscan/rational.hpp"
#include "sepscan/states.hpp"

namespace sepscan {

/// Rational density matrix on C^m (x) C^n with the QSEP tolerances.
struct QsepInstance {
  int m = 0;
  int n = 0;
  QMatrix rho;
  Rational delta_p;
  Rational eps_prime;
  Rational delta_prime;
};

/// One weighted unnormalized product term.
struct QsepTerm {
  Rational weight;
  QVector alpha;
  QVector beta;

  [[nodiscard]] bool is_zero() const { return weight == 0; }
};

/// Exactly m^2 n^2 terms, zero-padded.
struct QsepCertificate {
  int m = 0;
  int n = 0;
  std::vector<QsepTerm> terms;
};

struct QsepVerification {
  bool accepted = false;
  bool normalization_ok = false;  // Requirement (1) over nonzero terms
  bool distance_ok = false;       // Requirement (2)
  Rational normalization_defect;  // max_i |1 - |a_i|^2 |b_i|^2 sum_j p_j|
  Rational distance_sq;           // tr((rho - sigma~)^2)
};

/// ceil(log2(1/delta_p)) for delta_p in (0, 1].
int certificate_bits(const Rational& delta_p);

/// x = a / 2^p with integer |a| <= 2^p.
bool is_p_bit(const Rational& x, int p);

/// Toward-zero truncation to a p-bit number. |x| must not exceed 1.
Rational truncate_to_bits(const Rational& x, int p);
Rational truncate_to_bits(double x, int p);

/// Uses only exact rational arithmetic. Throws InputError on dimension
/// mismatch, a wrong term count, or any scalar wider than the instance
/// allows. Terms with zero weight are exempt from Requirement (1).
QsepVerification verify_certificate(const QsepInstance& inst, const QsepCertificate& cert);

/// sum_i p_i a_i a_i^dagger (x) b_i b_i^dagger
QMatrix certificate_sigma(int m, int n, const std::vector<QsepTerm>& terms);

/// p-bit truncation of every scalar, padded with zero terms to m^2 n^2.
/// Throws InputError when p < 1 or there are too many terms.
QsepCertificate truncate_decomposition(int m, int n, const std::vector<ProductTerm>& decomp, int p);
QsepCertificate truncate_decomposition(int m, int n, const std::vector<QsepTerm>& decomp, int p);

/// m^3 n^3 2^{-(p - 7.5)}
double error_bound_sigma(int m, int n, int p);
/// m^3 n^3 2^{-(p - 5)}
double error_bound_normalization(int m, int n, int p);
/// Squares of the bounds above as exact rationals, for exact comparison.
Rational error_bound_sigma_sq(int m, int n, int p);
Rational error_bound_normalization_exact(int m, int n, int p);

/// Smallest p with m^3 n^3 (2^{-(p-8)} + 2^{-(p-5)}) <= delta.
int reduction_bits(int m, int n, const Rational& delta);

/// Instance with delta_p = 2^{-p}, delta' = m^3 n^3 2^{-(p-8)} and
/// eps' = m^3 n^3 2^{-(p-5)}. rho must be Hermitian with trace exactly 1.
QsepInstance reduce_wmem_to_qsep(int m, int n, const QMatrix& rho, const Rational& delta);

struct WmemShift {
  HermitianOp rho0;   // unit trace, possibly not PSD
  double delta0 = 0.0;
  double lambda_min = 0.0;
};

/// rho0 = rho + delta (rho - I/(mn)) / 2, delta0 = delta / (2 sqrt(mn (mn - 1))).
WmemShift wmem_out_to_wmem(const DensityMatrix& rho, double delta);

/// Exact unit vector in C^d by inverse stereographic projection of a random
/// dyadic point with `bits` fractional bits.
QVector random_rational_unit_vector(int d, int bits, std::mt19937_64& rng);

/// Random separable decomposition with rational weights summing to exactly 1
/// and exact unit vectors.
std::vector<QsepTerm> random_rational_decomposition(int m, int n, int terms, int bits,
                                                    std::mt19937_64& rng);

}  // namespace sepscan
