#include "sepscan/qsep.hpp"

#include <cmath>

#include "sepscan/error.hpp"

namespace sepscan {

namespace {

Rational abs_q(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Rational cube_dims(int m, int n) {
  const long d = static_cast<long>(m) * n;
  return Rational(d * d * d);
}

void require_width(const Rational& x, int p, const char* what) {
  if (!is_p_bit(x, p)) {
    throw InputError(std::string("certificate ") + what + " is not a " + std::to_string(p) +
                     "-bit number: " + to_string(x));
  }
}

}  // namespace

int certificate_bits(const Rational& delta_p) {
  if (delta_p <= 0 || delta_p > 1) throw InputError("delta_p must lie in (0, 1]");
  int p = 0;
  Rational bound = 1;
  // smallest p with 2^{-p} <= delta_p
  while (bound > delta_p) {
    bound /= 2;
    ++p;
  }
  return p;
}

bool is_p_bit(const Rational& x, int p) {
  if (abs_q(x) > 1) return false;
  const Integer& den = x.get_den();
  const mp_bitcnt_t low = mpz_scan1(den.get_mpz_t(), 0);
  // den must be a power of two no larger than 2^p
  if (mpz_sizeinbase(den.get_mpz_t(), 2) != low + 1) return false;
  return static_cast<long>(low) <= p;
}

Rational truncate_to_bits(const Rational& x, int p) {
  if (p < 1) throw InputError("truncation needs p >= 1");
  if (abs_q(x) > 1) throw InputError("truncation input exceeds 1 in magnitude");
  Integer num = x.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(p));
  Integer a;
  mpz_tdiv_q(a.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
  Rational out(a, Integer(1));
  return out * pow2(-p);
}

Rational truncate_to_bits(double x, int p) {
  if (p < 1) throw InputError("truncation needs p >= 1");
  if (!(std::abs(x) <= 1.0)) throw InputError("truncation input exceeds 1 in magnitude");
  // Scaling by 2^p and truncating are both exact in binary floating point.
  const double a = std::trunc(std::ldexp(x, p));
  return exact_from_double(a) * pow2(-p);
}

QMatrix certificate_sigma(int m, int n, const std::vector<QsepTerm>& terms) {
  QMatrix sigma(m * n);
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    if (static_cast<int>(t.alpha.size()) != m || static_cast<int>(t.beta.size()) != n) {
      throw InputError("certificate term has wrong vector length");
    }
    add_outer(sigma, t.weight, qkron(t.alpha, t.beta));
  }
  return sigma;
}

QsepVerification verify_certificate(const QsepInstance& inst, const QsepCertificate& cert) {
  const int m = inst.m;
  const int n = inst.n;
  if (cert.m != m || cert.n != n || inst.rho.dim() != m * n) {
    throw InputError("verify_certificate: dimension mismatch");
  }
  const size_t expected = static_cast<size_t>(m) * m * n * n;
  if (cert.terms.size() != expected) {
    throw InputError("verify_certificate: certificate must have exactly m^2 n^2 terms");
  }
  const int p = certificate_bits(inst.delta_p);
  for (const auto& t : cert.terms) {
    if (static_cast<int>(t.alpha.size()) != m || static_cast<int>(t.beta.size()) != n) {
      throw InputError("verify_certificate: term has wrong vector length");
    }
    if (t.weight < 0) throw InputError("verify_certificate: negative weight");
    require_width(t.weight, p, "weight");
    for (const auto& z : t.alpha) {
      require_width(z.re, p, "alpha entry");
      require_width(z.im, p, "alpha entry");
    }
    for (const auto& z : t.beta) {
      require_width(z.re, p, "beta entry");
      require_width(z.im, p, "beta entry");
    }
  }

  Rational total = 0;
  for (const auto& t : cert.terms) total += t.weight;

  QsepVerification v;
  v.normalization_defect = 0;
  for (const auto& t : cert.terms) {
    if (t.is_zero()) continue;
    const Rational defect = abs_q(1 - norm2(t.alpha) * norm2(t.beta) * total);
    if (defect > v.normalization_defect) v.normalization_defect = defect;
  }
  v.normalization_ok = v.normalization_defect < inst.eps_prime;
  v.distance_sq = (inst.rho - certificate_sigma(m, n, cert.terms)).frobenius_sq();
  v.distance_ok = v.distance_sq < inst.delta_prime * inst.delta_prime;
  v.accepted = v.normalization_ok && v.distance_ok;
  return v;
}

QsepCertificate truncate_decomposition(int m, int n, const std::vector<QsepTerm>& decomp, int p) {
  if (p < 1) throw InputError("truncate_decomposition: p must be at least 1");
  const size_t slots = static_cast<size_t>(m) * m * n * n;
  if (decomp.size() > slots) throw InputError("truncate_decomposition: more than m^2 n^2 terms");
  QsepCertificate cert;
  cert.m = m;
  cert.n = n;
  for (const auto& t : decomp) {
    if (static_cast<int>(t.alpha.size()) != m || static_cast<int>(t.beta.size()) != n) {
      throw InputError("truncate_decomposition: term has wrong vector length");
    }
    QsepTerm out;
    out.weight = truncate_to_bits(t.weight, p);
    for (const auto& z : t.alpha) out.alpha.push_back({truncate_to_bits(z.re, p), truncate_to_bits(z.im, p)});
    for (const auto& z : t.beta) out.beta.push_back({truncate_to_bits(z.re, p), truncate_to_bits(z.im, p)});
    cert.terms.push_back(std::move(out));
  }
  while (cert.terms.size() < slots) {
    cert.terms.push_back({Rational(0), QVector(static_cast<size_t>(m)), QVector(static_cast<size_t>(n))});
  }
  return cert;
}

QsepCertificate truncate_decomposition(int m, int n, const std::vector<ProductTerm>& decomp, int p) {
  std::vector<QsepTerm> exact;
  exact.reserve(decomp.size());
  for (const auto& t : decomp) {
    if (t.state.alpha.size() != m || t.state.beta.size() != n) {
      throw InputError("truncate_decomposition: term has wrong vector length");
    }
    QsepTerm q;
    q.weight = truncate_to_bits(t.weight, p);
    for (Eigen::Index i = 0; i < m; ++i) {
      q.alpha.push_back({truncate_to_bits(t.state.alpha[i].real(), p),
                         truncate_to_bits(t.state.alpha[i].imag(), p)});
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      q.beta.push_back({truncate_to_bits(t.state.beta[i].real(), p),
                        truncate_to_bits(t.state.beta[i].imag(), p)});
    }
    exact.push_back(std::move(q));
  }
  // Already p-bit; a second truncation is the identity.
  return truncate_decomposition(m, n, exact, p);
}

double error_bound_sigma(int m, int n, int p) {
  const double d = static_cast<double>(m) * n;
  return d * d * d * std::pow(2.0, -(p - 7.5));
}

double error_bound_normalization(int m, int n, int p) {
  const double d = static_cast<double>(m) * n;
  return d * d * d * std::pow(2.0, -(p - 5));
}

Rational error_bound_sigma_sq(int m, int n, int p) {
  const Rational c = cube_dims(m, n);
  // (c 2^{-(p-7.5)})^2 = c^2 2^{-2p+15}
  return c * c * pow2(-2L * p + 15);
}

Rational error_bound_normalization_exact(int m, int n, int p) {
  return cube_dims(m, n) * pow2(-(static_cast<long>(p) - 5));
}

int reduction_bits(int m, int n, const Rational& delta) {
  if (delta <= 0) throw InputError("reduction_bits: delta must be positive");
  const Rational c = cube_dims(m, n);
  for (int p = 1; p < 100000; ++p) {
    const Rational need = c * (pow2(-(p - 8L)) + pow2(-(p - 5L)));
    if (need <= delta) return p;
  }
  throw ConfigError("reduction_bits: delta too small");
}

QsepInstance reduce_wmem_to_qsep(int m, int n, const QMatrix& rho, const Rational& delta) {
  if (rho.dim() != m * n) throw InputError("reduce_wmem_to_qsep: dimension mismatch");
  if (!rho.is_hermitian()) throw InputError("reduce_wmem_to_qsep: rho is not Hermitian");
  if (rho.trace_real() != 1) throw InputError("reduce_wmem_to_qsep: trace must be exactly 1");
  const int p = reduction_bits(m, n, delta);
  const Rational c = cube_dims(m, n);
  QsepInstance inst;
  inst.m = m;
  inst.n = n;
  inst.rho = rho;
  inst.delta_p = pow2(-p);
  inst.delta_prime = c * pow2(-(p - 8L));
  inst.eps_prime = c * pow2(-(p - 5L));
  return inst;
}

WmemShift wmem_out_to_wmem(const DensityMatrix& rho, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw InputError("wmem_out_to_wmem: delta must lie in (0, 1]");
  const int d = rho.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  WmemShift out;
  out.rho0 = HermitianOp(rho.matrix() + 0.5 * delta * (rho.matrix() - id));
  out.delta0 = delta / (2.0 * std::sqrt(static_cast<double>(d) * (d - 1)));
  out.lambda_min = lambda_min(out.rho0);
  return out;
}

QVector random_rational_unit_vector(int d, int bits, std::mt19937_64& rng) {
  if (d < 1) throw InputError("random_rational_unit_vector: d must be positive");
  const int real_dim = 2 * d;
  const long long span = 1LL << bits;
  std::uniform_int_distribution<long long> dist(-span, span);
  // x = (2t, |t|^2 - 1) / (|t|^2 + 1) lies exactly on the unit sphere.
  std::vector<Rational> t(static_cast<size_t>(real_dim - 1));
  Rational t2 = 0;
  for (auto& ti : t) {
    ti = Rational(static_cast<long>(dist(rng))) * pow2(-bits);
    t2 += ti * ti;
  }
  const Rational denom = t2 + 1;
  std::vector<Rational> x;
  x.reserve(static_cast<size_t>(real_dim));
  for (const auto& ti : t) x.push_back(2 * ti / denom);
  x.push_back((t2 - 1) / denom);
  QVector v(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) v[static_cast<size_t>(i)] = {x[2 * static_cast<size_t>(i)], x[2 * static_cast<size_t>(i) + 1]};
  return v;
}

std::vector<QsepTerm> random_rational_decomposition(int m, int n, int terms, int bits,
                                                    std::mt19937_64& rng) {
  if (terms < 1) throw InputError("random_rational_decomposition: need at least one term");
  std::uniform_int_distribution<long> w(1, 100);
  std::vector<long> raw(static_cast<size_t>(terms));
  long total = 0;
  for (auto& r : raw) {
    r = w(rng);
    total += r;
  }
  std::vector<QsepTerm> out;
  for (int i = 0; i < terms; ++i) {
    QsepTerm t;
    t.weight = Rational(raw[static_cast<size_t>(i)], total);
    t.weight.canonicalize();
    t.alpha = random_rational_unit_vector(m, bits, rng);
    t.beta = random_rational_unit_vector(n, bits, rng);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace sepscan
