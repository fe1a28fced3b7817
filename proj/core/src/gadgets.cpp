#include "sepscan/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sepscan/error.hpp"
#include "sepscan/nets.hpp"
#include "sepscan/wopt.hpp"

namespace sepscan {

namespace {

constexpr int kMaxCliqueVertices = 12;
constexpr long kBracketBits = 30;

void check_vertex(int n, int i) {
  if (i < 0 || i >= n) throw InputError("graph vertex " + std::to_string(i) + " out of range");
}

// Bitmask of one maximum clique.
unsigned max_clique_mask(const Graph& g) {
  const int n = g.n();
  if (n > kMaxCliqueVertices) throw InputError("clique_number: at most 12 vertices");
  std::vector<unsigned> nbr(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.edge(i, j)) nbr[static_cast<size_t>(i)] |= 1u << j;
  unsigned best = 0;
  int best_size = 0;
  for (unsigned s = 1; s < (1u << n); ++s) {
    const int size = __builtin_popcount(s);
    if (size <= best_size) continue;
    bool clique = true;
    for (int i = 0; i < n && clique; ++i) {
      if ((s >> i) & 1u) clique = (s & ~(1u << i) & ~nbr[static_cast<size_t>(i)]) == 0;
    }
    if (clique) {
      best = s;
      best_size = size;
    }
  }
  return best;
}

void grid_walk(const RealMatrix& a, int denominator, int pos, int left, RealVector& y, double& best) {
  const int n = static_cast<int>(a.rows());
  if (pos == n - 1) {
    y[pos] = static_cast<double>(left) / denominator;
    const double v = y.dot(a * y);
    if (v > best) best = v;
    return;
  }
  for (int k = 0; k <= left; ++k) {
    y[pos] = static_cast<double>(k) / denominator;
    grid_walk(a, denominator, pos + 1, left - k, y, best);
  }
}

// Smallest (round_up) or largest dyadic with kBracketBits fractional bits on
// the correct side of sqrt(target).
Rational dyadic_sqrt(const Rational& target, bool round_up) {
  const double s = std::sqrt(target.get_d());
  const Rational step = pow2(-kBracketBits);
  Rational q = exact_from_double(std::floor(std::ldexp(s, kBracketBits))) * step;
  if (round_up) {
    while (q * q < target) q += step;
    while (q > 0 && (q - step) * (q - step) >= target) q -= step;
  } else {
    while (q * q > target) q -= step;
    while ((q + step) * (q + step) <= target) q += step;
  }
  return q;
}

}  // namespace

Graph::Graph(int n) : n_(n), adj_(static_cast<size_t>(n < 0 ? 0 : n) * (n < 0 ? 0 : n), 0) {
  if (n < 0) throw InputError("graph needs a nonnegative vertex count");
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (const auto& [i, j] : edges) g.add_edge(i, j);
  return g;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

void Graph::add_edge(int i, int j) {
  check_vertex(n_, i);
  check_vertex(n_, j);
  if (i == j) throw InputError("graph self-loops are not allowed");
  adj_[index(i, j)] = 1;
  adj_[index(j, i)] = 1;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (edge(i, j)) out.emplace_back(i, j);
  return out;
}

RealMatrix Graph::adjacency() const {
  RealMatrix a = RealMatrix::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (edge(i, j)) a(i, j) = 1.0;
  return a;
}

int clique_number(const Graph& g) { return __builtin_popcount(max_clique_mask(g)); }

double simplex_grid_max(const RealMatrix& a, int denominator) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InputError("simplex_grid_max: need a square matrix");
  if (denominator < 1) throw InputError("simplex_grid_max: denominator must be positive");
  RealVector y(a.rows());
  double best = -std::numeric_limits<double>::infinity();
  grid_walk(a, denominator, 0, denominator, y, best);
  return best;
}

int simplex_grid_denominator(int n) {
  if (n < 1) throw InputError("simplex grid needs at least one vertex");
  if (n <= 4) return 40;
  if (n <= 6) return 20;
  throw InputError("simplex grid limited to 6 vertices");
}

MotzkinStraus motzkin_straus_value(const Graph& g) {
  if (g.n() < 1) throw InputError("Motzkin-Straus needs at least one vertex");
  MotzkinStraus out;
  out.kappa = clique_number(g);
  out.value = 1 - Rational(1, out.kappa);
  out.value.canonicalize();
  if (g.n() <= 6) {
    out.grid_denominator = simplex_grid_denominator(g.n());
    out.grid_max = simplex_grid_max(g.adjacency(), out.grid_denominator);
  }
  return out;
}

WmqsInstance clique_to_wmqs(const Graph& g, int c) {
  if (c < 2) throw InputError("clique threshold must be at least 2");
  if (g.n() < 1) throw InputError("clique_to_wmqs: empty graph");
  const Rational lo = 1 - Rational(1, c - 1);
  const Rational hi = 1 - Rational(1, c);
  WmqsInstance inst;
  inst.a = g.adjacency();
  inst.zeta_prime = (lo + hi) / 2;
  inst.eta_prime = (hi - lo) / 4;
  inst.zeta_prime.canonicalize();
  inst.eta_prime.canonicalize();
  return inst;
}

RsdfInstance wmqs_to_rsdf(const WmqsInstance& inst) {
  const RealMatrix& a = inst.a;
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw InputError("wmqs_to_rsdf: A must be square");
  RsdfInstance out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j) < 0.0 || a(i, j) != a(j, i)) {
        throw InputError("wmqs_to_rsdf: A must be symmetric and nonnegative");
      }
      RealMatrix b = RealMatrix::Zero(n, n);
      b(i, j) = b(j, i) = std::sqrt(a(i, j) / 2.0);
      out.blocks.push_back(std::move(b));
      out.pairs.emplace_back(i, j);
    }
  }
  out.zeta = inst.zeta_prime;
  out.eta = inst.eta_prime;
  return out;
}

double rsdf_objective(const std::vector<RealMatrix>& blocks, const RealVector& x) {
  double f = 0.0;
  for (const auto& b : blocks) {
    if (b.rows() != x.size()) throw InputError("rsdf_objective: size mismatch");
    const double v = x.dot(b * x);
    f += v * v;
  }
  return f;
}

WvalInstance rsdf_to_wval(const RsdfInstance& inst, bool pad_square) {
  if (inst.eta <= 0 || inst.zeta - inst.eta <= 0) {
    throw InputError("rsdf_to_wval: need 0 < eta < zeta");
  }
  const int block = inst.blocks.empty() ? 1 : static_cast<int>(inst.blocks.front().rows());
  int m = static_cast<int>(inst.blocks.size()) + 1;
  int n = block;
  if (pad_square) m = n = std::max(m, n);
  ComplexMatrix b = ComplexMatrix::Zero(static_cast<Eigen::Index>(m) * n, static_cast<Eigen::Index>(m) * n);
  for (size_t k = 0; k < inst.blocks.size(); ++k) {
    const RealMatrix& bk = inst.blocks[k];
    if (bk.rows() != block || bk.cols() != block) throw InputError("rsdf_to_wval: blocks differ in size");
    const Eigen::Index off = static_cast<Eigen::Index>(k + 1) * n;
    for (int r = 0; r < block; ++r)
      for (int c = 0; c < block; ++c) {
        b(r, off + c) = bk(r, c);
        b(off + r, c) = bk(r, c);
      }
  }
  WvalInstance out;
  out.b = HermitianOp(b);
  out.m = m;
  out.n = n;
  const Rational lo = dyadic_sqrt(inst.zeta - inst.eta, true);
  const Rational hi = dyadic_sqrt(inst.zeta + inst.eta, false);
  if (lo >= hi) throw ConfigError("rsdf_to_wval: gap too narrow for the rational bracket");
  out.gamma = (lo + hi) / 2;
  out.epsilon = (hi - lo) / 4;
  out.gamma.canonicalize();
  out.epsilon.canonicalize();
  return out;
}

ChainReport verify_chain(const Graph& g, int c, double net_delta, std::uint64_t max_net_points) {
  const WmqsInstance wmqs = clique_to_wmqs(g, c);
  const RsdfInstance rsdf = wmqs_to_rsdf(wmqs);
  const WvalInstance wval = rsdf_to_wval(rsdf);

  ChainReport rep;
  rep.c = c;
  const unsigned mask = max_clique_mask(g);
  rep.kappa = __builtin_popcount(mask);
  rep.expected_yes = rep.kappa >= c;
  rep.h_value = 1.0 - 1.0 / rep.kappa;
  RealVector x = RealVector::Zero(g.n());
  for (int i = 0; i < g.n(); ++i)
    if ((mask >> i) & 1u) x[i] = 1.0 / std::sqrt(static_cast<double>(rep.kappa));
  rep.f_value = rsdf_objective(rsdf.blocks, x);
  rep.gamma = wval.gamma;
  rep.epsilon = wval.epsilon;

  NetOptions opts;
  opts.field = NetField::Real;
  opts.phase_quotient = true;
  rep.net_points = net_size(wval.n, net_delta, opts);
  if (rep.net_points > max_net_points) {
    throw ConfigError("verify_chain: net of " + std::to_string(rep.net_points) +
                      " points exceeds the limit of " + std::to_string(max_net_points));
  }
  const DeltaNet net = build_net(wval.n, net_delta, opts);
  WoptOptions wo;
  wo.discretized = Subsystem::B;
  const WoptResult r = wopt_max(wval.b, wval.m, wval.n, net, wo);
  rep.wval_value = r.value;
  rep.guarantee = r.guarantee;
  rep.chain_yes = exact_from_double(r.value) >= wval.gamma - wval.epsilon;
  rep.consistent = rep.chain_yes == rep.expected_yes;
  return rep;
}

}  // namespace sepscan
