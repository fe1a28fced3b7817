#include "sepscan/basis.hpp"

#include <cmath>
#include <string>

#include "sepscan/error.hpp"

namespace sepscan {

std::vector<ComplexMatrix> gell_mann_family(int d) {
  if (d < 1) throw InputError("gell_mann_family: dimension must be positive");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<size_t>(d * d));
  out.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));

  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(j, k) = r;
      s(k, j) = r;
      out.push_back(std::move(s));
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      a(j, k) = Complex(0.0, -r);
      a(k, j) = Complex(0.0, r);
      out.push_back(std::move(a));
    }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    const double c = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) g(j, j) = c;
    g(l, l) = -static_cast<double>(l) * c;
    out.push_back(std::move(g));
  }
  return out;
}

HermitianBasis::HermitianBasis(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 1) throw InputError("hermitian_basis: dimensions must be positive");
  const auto ga = gell_mann_family(m);
  const auto gb = gell_mann_family(n);
  elements_.reserve(ga.size() * gb.size());
  for (const auto& a : ga)
    for (const auto& b : gb) elements_.emplace_back(kron(a, b));
}

HermitianBasis hermitian_basis(int m, int n) { return HermitianBasis(m, n); }

BlochVector to_bloch(const HermitianOp& a, const HermitianBasis& basis) {
  if (a.dim() != basis.dim()) {
    throw InputError("to_bloch: operator dimension " + std::to_string(a.dim()) +
                     " does not match basis dimension " + std::to_string(basis.dim()));
  }
  BlochVector v;
  v.coords.resize(basis.size() - 1);
  for (int i = 1; i < basis.size(); ++i) v.coords[i - 1] = hs_inner(basis[i], a);
  return v;
}

HermitianOp from_bloch(const BlochVector& x, double trace, const HermitianBasis& basis) {
  if (x.size() != basis.size() - 1) {
    throw InputError("from_bloch: vector length " + std::to_string(x.size()) +
                     " does not match basis size " + std::to_string(basis.size() - 1));
  }
  const int d = basis.dim();
  ComplexMatrix out = ComplexMatrix::Identity(d, d) * (trace / d);
  for (int i = 1; i < basis.size(); ++i) out += x.coords[i - 1] * basis[i].matrix();
  return HermitianOp(out);
}

}  // namespace sepscan
