#include "sepscan/rational.hpp"

#include <cmath>

#include "sepscan/error.hpp"

namespace sepscan {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw InputError("malformed rational '" + s + "'");
  }
  Integer n(num[0] == '+' ? num.substr(1) : num, 10);
  Integer d(den[0] == '+' ? den.substr(1) : den, 10);
  if (d == 0) throw InputError("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational pow2(long e) {
  Integer p = 1;
  if (e >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return Rational(p);
  }
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return Rational(Integer(1), p);
}

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("exact_from_double: non-finite value");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

Rational QMatrix::trace_real() const {
  Rational t = 0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i).re;
  return t;
}

bool QMatrix::is_hermitian() const {
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c) {
      if (!((*this)(r, c) == (*this)(c, r).conj())) return false;
    }
  return true;
}

Rational QMatrix::frobenius_sq() const {
  Rational s = 0;
  for (const auto& z : data_) s += z.norm2();
  return s;
}

ComplexMatrix QMatrix::to_double() const {
  ComplexMatrix out(dim_, dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(r, c) = Complex((*this)(r, c).re.get_d(), (*this)(r, c).im.get_d());
  return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.dim() != b.dim()) throw InputError("QMatrix: dimension mismatch");
  QMatrix out(a.dim());
  for (size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
  return out;
}

Rational norm2(const QVector& v) {
  Rational s = 0;
  for (const auto& z : v) s += z.norm2();
  return s;
}

QVector qkron(const QVector& a, const QVector& b) {
  QVector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

void add_outer(QMatrix& a, const Rational& w, const QVector& v) {
  if (static_cast<int>(v.size()) != a.dim()) throw InputError("add_outer: dimension mismatch");
  if (w == 0) return;
  for (int r = 0; r < a.dim(); ++r) {
    if (v[static_cast<size_t>(r)].is_zero()) continue;
    const QComplex wr = w * v[static_cast<size_t>(r)];
    for (int c = 0; c < a.dim(); ++c) {
      if (v[static_cast<size_t>(c)].is_zero()) continue;
      a(r, c) += wr * v[static_cast<size_t>(c)].conj();
    }
  }
}

QMatrix rational_from_double(const ComplexMatrix& m, int bits) {
  const int d = static_cast<int>(m.rows());
  QMatrix out(d);
  const Rational scale = pow2(bits);
  auto round_dyadic = [&](double x) {
    const double r = std::nearbyint(std::ldexp(x, bits));
    return Rational(exact_from_double(r) / scale);
  };
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out(r, c) = {round_dyadic(m(r, c).real()), round_dyadic(m(r, c).imag())};
  for (int r = 0; r < d; ++r) {
    out(r, r).im = 0;
    for (int c = r + 1; c < d; ++c) {
      const Rational re = (out(r, c).re + out(c, r).re) / 2;
      const Rational im = (out(r, c).im - out(c, r).im) / 2;
      out(r, c) = {re, im};
      out(c, r) = {re, -im};
    }
  }
  return out;
}

}  // namespace sepscan
