#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "sepscan/linalg.hpp"

namespace sepscan {

/// Arbitrary-precision rational, always canonical (gmp keeps gcd 1 and a
/// positive denominator after every operation).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a" or "a/b"; throws InputError otherwise or on b == 0.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

/// 2^e for any integer e.
Rational pow2(long e);

/// Exact value of a finite double.
Rational exact_from_double(double x);

struct QComplex {
  Rational re;
  Rational im;

  QComplex() = default;
  QComplex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  [[nodiscard]] QComplex conj() const { return {re, -im}; }
  [[nodiscard]] Rational norm2() const { return re * re + im * im; }
  [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }

  friend QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend QComplex operator*(const QComplex& a, const QComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend QComplex operator*(const Rational& s, const QComplex& a) { return {s * a.re, s * a.im}; }
  QComplex& operator+=(const QComplex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
};

using QVector = std::vector<QComplex>;

/// Dense square rational complex matrix, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim) {}

  [[nodiscard]] int dim() const { return dim_; }
  QComplex& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
  [[nodiscard]] const QComplex& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * dim_ + c];
  }

  [[nodiscard]] Rational trace_real() const;
  [[nodiscard]] bool is_hermitian() const;
  /// tr(X^2) for Hermitian X, i.e. the squared Frobenius norm.
  [[nodiscard]] Rational frobenius_sq() const;
  [[nodiscard]] ComplexMatrix to_double() const;

  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);

 private:
  int dim_ = 0;
  std::vector<QComplex> data_;
};

Rational norm2(const QVector& v);
QVector qkron(const QVector& a, const QVector& b);
/// a += w |v><v|
void add_outer(QMatrix& a, const Rational& w, const QVector& v);

/// Exact rational approximation of a double matrix: every entry rounded to a
/// dyadic with `bits` fractional bits, then Hermitized exactly.
QMatrix rational_from_double(const ComplexMatrix& m, int bits);

}  // namespace sepscan
