#include "sepscan/states.hpp"

#include <cmath>

#include "sepscan/error.hpp"

namespace sepscan {

ComplexVector random_unit_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexVector v(d);
  do {
    for (int i = 0; i < d; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      v[i] = Complex(re, im);
    }
  } while (v.norm() < 1e-12);
  return v.normalized();
}

ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix g(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(r, c) = Complex(re, im);
    }
  // Gram-Schmidt with phases fixed by R's diagonal gives the Haar measure.
  ComplexMatrix q = g;
  for (int c = 0; c < d; ++c) {
    for (int p = 0; p < c; ++p) q.col(c) -= q.col(p).dot(q.col(c)) * q.col(p);
    q.col(c).normalize();
  }
  return q;
}

HermitianOp random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix g(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(r, c) = Complex(re, im);
    }
  ComplexMatrix h = (g + g.adjoint()) * 0.5;
  h /= h.norm();
  return HermitianOp(h);
}

DensityMatrix maxmixed(int m, int n) {
  if (m < 1 || n < 1) throw InputError("maxmixed: dimensions must be positive");
  const int d = m * n;
  return DensityMatrix(m, n, ComplexMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d)));
}

DensityMatrix maximally_entangled(int d) {
  if (d < 1) throw InputError("maximally_entangled: dimension must be positive");
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (int i = 0; i < d; ++i) psi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  return DensityMatrix(d, d, outer(psi));
}

DensityMatrix bell() { return maximally_entangled(2); }

DensityMatrix werner(double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw InputError("werner: w must lie in [0, 1]");
  ComplexVector psi = ComplexVector::Zero(4);
  psi[1] = 1.0 / std::sqrt(2.0);
  psi[2] = -1.0 / std::sqrt(2.0);
  const ComplexMatrix rho = w * outer(psi) + (1.0 - w) * ComplexMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix(2, 2, rho);
}

std::vector<ProductTerm> random_product_decomposition(int m, int n, int terms,
                                                      std::mt19937_64& rng) {
  if (terms < 1) throw InputError("random_product_decomposition: need at least one term");
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::vector<ProductTerm> out(static_cast<size_t>(terms));
  double total = 0.0;
  for (auto& t : out) {
    t.weight = unif(rng);
    total += t.weight;
    t.state.alpha = random_unit_vector(m, rng);
    t.state.beta = random_unit_vector(n, rng);
  }
  for (auto& t : out) t.weight /= total;
  return out;
}

DensityMatrix from_decomposition(int m, int n, const std::vector<ProductTerm>& terms) {
  ComplexMatrix rho = ComplexMatrix::Zero(m * n, m * n);
  for (const auto& t : terms) rho += t.weight * outer(t.state.vector());
  return DensityMatrix(m, n, rho);
}

DensityMatrix product_mixture(int m, int n, int terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return from_decomposition(m, n, random_product_decomposition(m, n, terms, rng));
}

DensityMatrix random_full_rank(int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const int d = m * n;
  ComplexMatrix g(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(r, c) = Complex(re, im);
    }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(m, n, rho);
}

DensityMatrix state_library(const std::string& name, const StateParams& p) {
  if (name == "maxmixed") return maxmixed(p.m, p.n);
  if (name == "bell") return bell();
  if (name == "werner") return werner(p.w);
  if (name == "product_mixture") return product_mixture(p.m, p.n, p.terms, p.seed);
  if (name == "random_full_rank") return random_full_rank(p.m, p.n, p.seed);
  throw InputError("unknown state '" + name + "'");
}

}  // namespace sepscan
