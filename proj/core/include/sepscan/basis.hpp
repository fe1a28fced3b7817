#pragma once

#include <vector>

#include "sepscan/linalg.hpp"

namespace sepscan {

/// Coordinates of the traceless part of a Hermitian operator, length m^2 n^2 - 1.
struct BlochVector {
  RealVector coords;

  [[nodiscard]] Eigen::Index size() const { return coords.size(); }
};

/// Orthonormal Hermitian basis of H_{m,n} built from tensor products of
/// normalized generalized Gell-Mann matrices.
///
/// Single-factor ordering (dimension d): identity/sqrt(d), then the symmetric
/// family (E_jk + E_kj)/sqrt(2) for j < k in lexicographic order, then the
/// antisymmetric family -i(E_jk - E_kj)/sqrt(2) in the same order, then the
/// diagonal family for l = 1..d-1. Product element a*n^2 + b is
/// G^A_a (x) G^B_b, so element 0 is I/sqrt(mn).
class HermitianBasis {
 public:
  HermitianBasis(int m, int n);

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int dim() const { return m_ * n_; }
  [[nodiscard]] int size() const { return static_cast<int>(elements_.size()); }
  [[nodiscard]] const HermitianOp& operator[](int i) const {
    return elements_[static_cast<size_t>(i)];
  }
  [[nodiscard]] const std::vector<HermitianOp>& elements() const { return elements_; }

 private:
  int m_;
  int n_;
  std::vector<HermitianOp> elements_;
};

/// Normalized generalized Gell-Mann matrices for one factor, identity first.
std::vector<ComplexMatrix> gell_mann_family(int d);

HermitianBasis hermitian_basis(int m, int n);

/// coords[i-1] = tr(X_i a), i = 1..size-1.
BlochVector to_bloch(const HermitianOp& a, const HermitianBasis& basis);

/// Inverse of to_bloch with the trace prescribed.
HermitianOp from_bloch(const BlochVector& x, double trace, const HermitianBasis& basis);

}  // namespace sepscan
