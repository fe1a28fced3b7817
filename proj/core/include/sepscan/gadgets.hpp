#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sepscan/linalg.hpp"
#include "sepscan/rational.hpp"

namespace sepscan {

/// Simple undirected graph as a symmetric 0/1 adjacency matrix.
class Graph {
 public:
  explicit Graph(int n = 0);
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
  static Graph complete(int n);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] bool edge(int i, int j) const { return adj_[index(i, j)] != 0; }
  void add_edge(int i, int j);
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const;
  [[nodiscard]] RealMatrix adjacency() const;

 private:
  [[nodiscard]] size_t index(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  int n_;
  std::vector<std::uint8_t> adj_;
};

/// Size of the largest clique by subset enumeration. n <= 12.
int clique_number(const Graph& g);

/// Maximum of y^T A y over the simplex grid with spacing 1/denominator.
double simplex_grid_max(const RealMatrix& a, int denominator);
/// 1/40 for n <= 4, 1/20 for n <= 6; throws InputError above.
int simplex_grid_denominator(int n);

struct MotzkinStraus {
  int kappa = 0;
  Rational value;          // 1 - 1/kappa
  double grid_max = 0.0;
  int grid_denominator = 0;
};

/// Exact clique number plus the grid cross-check. n <= 12 (grid needs n <= 6).
MotzkinStraus motzkin_straus_value(const Graph& g);

struct WmqsInstance {
  RealMatrix a;  // symmetric, nonnegative
  Rational zeta_prime;
  Rational eta_prime;
};

/// zeta' = midpoint of [1 - 1/(c-1), 1 - 1/c], eta' = width / 4, A = A_G.
WmqsInstance clique_to_wmqs(const Graph& g, int c);

struct RsdfInstance {
  std::vector<RealMatrix> blocks;
  std::vector<std::pair<int, int>> pairs;  // (i, j) that produced each block
  Rational zeta;
  Rational eta;
};

/// One block per pair i < j with sqrt(A_ij / 2) at (i, j) and (j, i), so that
/// sum_{i<j} (x^T B^{ij} x)^2 = sum_{i,j} A_ij x_i^2 x_j^2 and F = H(A).
RsdfInstance wmqs_to_rsdf(const WmqsInstance& inst);

/// sum_i (x^T B_i x)^2
double rsdf_objective(const std::vector<RealMatrix>& blocks, const RealVector& x);

struct WvalInstance {
  HermitianOp b;
  int m = 0;  // number of blocks + 1
  int n = 0;  // block size
  Rational gamma;
  Rational epsilon;
};

/// Arrow-shaped block matrix with B_i in block (0, i) and (i, 0). Its
/// maximum over separable states is sqrt(F). gamma and epsilon are exact
/// rationals with [gamma - eps, gamma + eps] strictly inside
/// [sqrt(zeta - eta), sqrt(zeta + eta)]. With pad_square each block is padded
/// with zeros to size m so that m = n.
WvalInstance rsdf_to_wval(const RsdfInstance& inst, bool pad_square = false);

struct ChainReport {
  int kappa = 0;
  int c = 0;
  bool expected_yes = false;  // kappa >= c
  bool chain_yes = false;
  bool consistent = false;
  double h_value = 0.0;       // 1 - 1/kappa
  double f_value = 0.0;       // RSDF objective at the clique-uniform point
  double wval_value = 0.0;    // net maximum of tr(B sigma)
  double guarantee = 0.0;     // 2 delta ||B||_F from wopt_max
  Rational gamma;
  Rational epsilon;
  std::uint64_t net_points = 0;
};

/// Runs CLIQUE -> WMQS -> RSDF -> WVAL and decides the WVAL instance by the
/// net maximum over separable states (real sign-quotient net on the block
/// factor, which suffices because the blocks are real symmetric). The chain
/// answers yes when the net value reaches gamma - epsilon. Throws ConfigError
/// when the net would exceed max_net_points.
ChainReport verify_chain(const Graph& g, int c, double net_delta,
                         std::uint64_t max_net_points = 2'000'000);

}  // namespace sepscan
