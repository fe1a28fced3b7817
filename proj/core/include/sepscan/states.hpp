#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sepscan/linalg.hpp"
#include "sepscan/wopt.hpp"

namespace sepscan {

// Seeded generators. Everything draws from std::mt19937_64 so a seed fixes
// the output on every platform with the same standard library.

ComplexVector random_unit_vector(int d, std::mt19937_64& rng);
ComplexMatrix random_unitary(int d, std::mt19937_64& rng);
/// Gaussian Hermitian matrix scaled to unit Hilbert-Schmidt norm.
HermitianOp random_hermitian(int d, std::mt19937_64& rng);

DensityMatrix maxmixed(int m, int n);
/// |Phi+><Phi+| on C^d (x) C^d.
DensityMatrix maximally_entangled(int d);
DensityMatrix bell();
/// w |psi-><psi-| + (1 - w) I/4; entangled iff w > 1/3.
DensityMatrix werner(double w);

struct ProductTerm {
  double weight = 0.0;
  ProductState state;
};

/// Random convex combination of `terms` pure product states, with the
/// decomposition that produced it.
std::vector<ProductTerm> random_product_decomposition(int m, int n, int terms,
                                                      std::mt19937_64& rng);
DensityMatrix from_decomposition(int m, int n, const std::vector<ProductTerm>& terms);
DensityMatrix product_mixture(int m, int n, int terms, std::uint64_t seed);
/// Ginibre G G^dagger / tr, full rank with probability one.
DensityMatrix random_full_rank(int m, int n, std::uint64_t seed);

struct StateParams {
  int m = 2;
  int n = 2;
  double w = 0.5;
  int terms = 6;
  std::uint64_t seed = 1;
};

/// Names: maxmixed, bell, werner, product_mixture, random_full_rank.
/// Throws InputError for anything else.
DensityMatrix state_library(const std::string& name, const StateParams& params = {});

}  // namespace sepscan
