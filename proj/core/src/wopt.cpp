#include "sepscan/wopt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "sepscan/error.hpp"

namespace sepscan {

namespace {

std::atomic<int> g_threads{0};

struct Candidate {
  double score = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;
  bool valid = false;
};

// Blocks A_ij (n x n) of an operator on C^m (x) C^n, stored contiguously so
// the inner accumulation is a flat axpy.
struct BlockedOperator {
  int m;
  int n;
  std::vector<Complex> data;  // block (i, j), entry (r, c) at ((i*m + j)*n + r)*n + c

  BlockedOperator(const ComplexMatrix& a, int m_, int n_) : m(m_), n(n_) {
    data.resize(static_cast<size_t>(m) * m * n * n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            data[((static_cast<size_t>(i) * m + j) * n + r) * n + c] = a(i * n + r, j * n + c);
  }

  void conditioned(const Complex* x, Complex* out) const {
    const size_t nn = static_cast<size_t>(n) * n;
    std::fill(out, out + nn, Complex(0.0));
    const Complex* blk = data.data();
    for (int i = 0; i < m; ++i) {
      const Complex xi = std::conj(x[i]);
      for (int j = 0; j < m; ++j, blk += nn) {
        const Complex w = xi * x[j];
        if (w == Complex(0.0)) continue;
        for (size_t t = 0; t < nn; ++t) out[t] += w * blk[t];
      }
    }
  }
};

// Extreme eigenvalue of a small Hermitian matrix (row-major n x n buffer).
double extreme_eigenvalue(const Complex* b, int n, WoptMode mode) {
  if (n == 1) {
    const double v = b[0].real();
    return mode == WoptMode::Signed ? v : std::abs(v);
  }
  if (n == 2) {
    const double a = b[0].real();
    const double d = b[3].real();
    const double mid = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(b[1]));
    if (mode == WoptMode::Signed) return mid + rad;
    return std::max(std::abs(mid + rad), std::abs(mid - rad));
  }
  ComplexMatrix h(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) h(r, c) = b[r * n + c];
  const RealVector ev = eigenvalues(HermitianOp(h, 1e-6));
  if (mode == WoptMode::Signed) return ev[0];
  return std::max(std::abs(ev[0]), std::abs(ev[n - 1]));
}

Candidate scan_range(const BlockedOperator& blocks, const DeltaNet& net, std::size_t begin,
                     std::size_t end, WoptMode mode) {
  Candidate best;
  std::vector<Complex> buf(static_cast<size_t>(blocks.n) * blocks.n);
  for (std::size_t i = begin; i < end; ++i) {
    blocks.conditioned(net.point_data(i), buf.data());
    const double s = extreme_eigenvalue(buf.data(), blocks.n, mode);
    if (!best.valid || s > best.score) best = {s, i, true};
  }
  return best;
}

}  // namespace

void set_default_threads(int threads) { g_threads = std::max(0, threads); }

int default_threads() {
  const int t = g_threads.load();
  if (t > 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

HermitianOp swap_factors(const HermitianOp& a, int m, int n) {
  if (a.dim() != m * n) throw InputError("swap_factors: dimension mismatch");
  ComplexMatrix out(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < m; ++j)
        for (int c = 0; c < n; ++c) out(r * m + i, c * m + j) = a.matrix()(i * n + r, j * n + c);
  return HermitianOp(out);
}

HermitianOp conditioned_operator(const HermitianOp& a, int m, int n, const ComplexVector& x,
                                 Subsystem side) {
  if (a.dim() != m * n) throw InputError("conditioned_operator: dimension mismatch");
  const int fixed = side == Subsystem::A ? m : n;
  if (x.size() != fixed) throw InputError("conditioned_operator: vector has wrong length");
  if (std::abs(x.norm() - 1.0) > tol::kUnitVector) {
    throw InputError("conditioned_operator: x must be a unit vector");
  }
  if (side == Subsystem::B) return conditioned_operator(swap_factors(a, m, n), n, m, x);
  const BlockedOperator blocks(a.matrix(), m, n);
  std::vector<Complex> buf(static_cast<size_t>(n) * n);
  blocks.conditioned(x.data(), buf.data());
  ComplexMatrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = buf[static_cast<size_t>(r) * n + c];
  return HermitianOp(out, 1e-8);
}

double product_expectation(const HermitianOp& a, const ProductState& s) {
  const ComplexVector v = s.vector();
  if (v.size() != a.dim()) throw InputError("product_expectation: dimension mismatch");
  return v.dot(a.matrix() * v).real();
}

WoptResult wopt_max(const HermitianOp& a, int m, int n, const DeltaNet& net,
                    const WoptOptions& options) {
  if (a.dim() != m * n) throw InputError("wopt_max: operator dimension mismatch");
  const bool side_a = options.discretized == Subsystem::A;
  const int fixed = side_a ? m : n;
  const int free = side_a ? n : m;
  if (net.m() != fixed) throw InputError("wopt_max: net dimension does not match the factor");

  const HermitianOp oriented = side_a ? a : swap_factors(a, m, n);
  const BlockedOperator blocks(oriented.matrix(), fixed, free);

  const std::size_t total = net.size();
  const int threads =
      static_cast<int>(std::min<std::size_t>(options.threads > 0 ? options.threads : default_threads(),
                                              std::max<std::size_t>(1, total / 4096)));
  std::vector<Candidate> partial(static_cast<size_t>(std::max(threads, 1)));
  if (threads <= 1) {
    partial[0] = scan_range(blocks, net, 0, total, options.mode);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t b = std::min(total, t * chunk);
      const std::size_t e = std::min(total, b + chunk);
      pool.emplace_back([&, t, b, e] { partial[static_cast<size_t>(t)] = scan_range(blocks, net, b, e, options.mode); });
    }
    for (auto& th : pool) th.join();
  }
  // Chunks are index-ordered, so a strict comparison keeps the lowest index.
  Candidate best;
  for (const auto& c : partial) {
    if (c.valid && (!best.valid || c.score > best.score)) best = c;
  }

  const ComplexVector x = net.point(best.index);
  const EigDecomposition eig = eig_hermitian(conditioned_operator(oriented, fixed, free, x));
  Eigen::Index col = 0;
  if (options.mode == WoptMode::Absolute &&
      std::abs(eig.values[free - 1]) > std::abs(eig.values[0])) {
    col = free - 1;
  }
  ComplexVector y = eig.vectors.col(col);
  y.normalize();

  WoptResult result;
  result.maximizer = side_a ? ProductState{x, y} : ProductState{y, x};
  result.value = product_expectation(a, result.maximizer);
  result.guarantee = 2.0 * net.delta() * a.frobenius_norm();
  result.net_index = best.index;
  return result;
}

}  // namespace sepscan
