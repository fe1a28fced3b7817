#include "sepscan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sepscan/error.hpp"

namespace sepscan {

HermitianOp::HermitianOp(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw InputError("HermitianOp: matrix is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected square");
  }
  ComplexMatrix adj = m.adjoint();
  residual_ = 0.5 * (m - adj).norm();
  const double limit = tol * std::max<double>(1.0, static_cast<double>(m.rows()));
  if (!(residual_ <= limit)) {
    throw InputError("HermitianOp: anti-Hermitian residual " + std::to_string(residual_) +
                     " exceeds " + std::to_string(limit));
  }
  matrix_ = 0.5 * (m + adj);
}

HermitianOp HermitianOp::identity(int dim) {
  return HermitianOp(ComplexMatrix::Identity(dim, dim));
}

HermitianOp HermitianOp::zero(int dim) { return HermitianOp(ComplexMatrix::Zero(dim, dim)); }

double HermitianOp::trace() const { return matrix_.trace().real(); }

HermitianOp operator+(const HermitianOp& a, const HermitianOp& b) {
  return HermitianOp(a.matrix_ + b.matrix_);
}

HermitianOp operator-(const HermitianOp& a, const HermitianOp& b) {
  return HermitianOp(a.matrix_ - b.matrix_);
}

HermitianOp operator*(double s, const HermitianOp& a) { return HermitianOp(s * a.matrix_); }

double hs_inner(const HermitianOp& a, const HermitianOp& b) {
  if (a.dim() != b.dim()) throw InputError("hs_inner: dimension mismatch");
  // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

}  // namespace

EigDecomposition eig_hermitian(const HermitianOp& h) {
  const Eigen::Index d = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::Identity(d, d);
  const double target = tol::kJacobiRelative * a.norm();

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) break;
    for (Eigen::Index p = 0; p < d - 1; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < d; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (Eigen::Index k = 0; k < d; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() > a(y, y).real();
  });

  EigDecomposition out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    out.values[j] = a(order[static_cast<size_t>(j)], order[static_cast<size_t>(j)]).real();
    out.vectors.col(j) = v.col(order[static_cast<size_t>(j)]);
  }
  return out;
}

RealVector eigenvalues(const HermitianOp& h) { return eig_hermitian(h).values; }

double lambda_min(const HermitianOp& h) {
  const RealVector ev = eigenvalues(h);
  return ev[ev.size() - 1];
}

double lambda_max(const HermitianOp& h) { return eigenvalues(h)[0]; }

double trace_norm(const ComplexMatrix& x) {
  const Eigen::Index r = x.rows();
  const Eigen::Index c = x.cols();
  if (r == 0 || c == 0) return 0.0;
  ComplexMatrix dil = ComplexMatrix::Zero(r + c, r + c);
  dil.block(0, r, r, c) = x;
  dil.block(r, 0, c, r) = x.adjoint();
  const RealVector ev = eigenvalues(HermitianOp(dil));
  return 0.5 * ev.cwiseAbs().sum();
}

DensityMatrix::DensityMatrix(int m, int n, const HermitianOp& op, double trace_tol,
                             double psd_tol)
    : m_(m), n_(n), op_(op) {
  if (m < 1 || n < 1) throw InputError("DensityMatrix: dimensions must be positive");
  if (op.dim() != m * n) {
    throw InputError("DensityMatrix: operator dimension " + std::to_string(op.dim()) +
                     " does not equal m*n = " + std::to_string(m * n));
  }
  if (!(std::abs(op.trace() - 1.0) <= trace_tol)) {
    throw InputError("DensityMatrix: trace " + std::to_string(op.trace()) + " is not 1");
  }
  const double lmin = lambda_min(op);
  if (!(lmin >= -psd_tol)) {
    throw InputError("DensityMatrix: minimum eigenvalue " + std::to_string(lmin) +
                     " is negative");
  }
}

DensityMatrix::DensityMatrix(int m, int n, const ComplexMatrix& matrix)
    : DensityMatrix(m, n, HermitianOp(matrix)) {}

HermitianOp partial_trace(const HermitianOp& op, int m, int n, Subsystem traced) {
  if (op.dim() != m * n) throw InputError("partial_trace: dimensions do not factor");
  const ComplexMatrix& x = op.matrix();
  if (traced == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < n; ++k) out(i, j) += x(i * n + k, j * n + k);
    return HermitianOp(out);
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < m; ++i) out(k, l) += x(i * n + k, i * n + l);
  return HermitianOp(out);
}

HermitianOp partial_trace(const DensityMatrix& rho, Subsystem traced) {
  return partial_trace(rho.op(), rho.m(), rho.n(), traced);
}

HermitianOp partial_transpose(const HermitianOp& op, int m, int n, Subsystem which) {
  if (op.dim() != m * n) throw InputError("partial_transpose: dimensions do not factor");
  const ComplexMatrix& x = op.matrix();
  ComplexMatrix out(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          out(i * n + k, j * n + l) = which == Subsystem::B ? x(i * n + l, j * n + k)
                                                            : x(j * n + k, i * n + l);
        }
  return HermitianOp(out);
}

ComplexMatrix realign(const HermitianOp& op, int m, int n) {
  if (op.dim() != m * n) throw InputError("realign: dimensions do not factor");
  const ComplexMatrix& x = op.matrix();
  ComplexMatrix u(m * m, n * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) u(j * m + i, l * n + k) = x(i * n + k, j * n + l);
  return u;
}

bool is_unnormalized_pure(const HermitianOp& o, double alpha, double tol) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InputError("is_unnormalized_pure: alpha must lie in (0, 1]");
  }
  const ComplexMatrix& x = o.matrix();
  const ComplexMatrix x2 = x * x;
  const double tr2 = x2.trace().real();
  const double tr3 = (x2 * x).trace().real();
  return std::abs(tr2 - alpha * alpha) <= tol && std::abs(tr3 - alpha * alpha * alpha) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

ComplexMatrix outer(const ComplexVector& psi) { return psi * psi.adjoint(); }

HermitianOp local_conjugate(const HermitianOp& op, const ComplexMatrix& u,
                            const ComplexMatrix& v) {
  const ComplexMatrix w = kron(u, v);
  if (w.rows() != op.dim()) throw InputError("local_conjugate: dimension mismatch");
  return HermitianOp(w * op.matrix() * w.adjoint());
}

}  // namespace sepscan
