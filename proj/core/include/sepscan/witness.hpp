#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sepscan/basis.hpp"
#include "sepscan/nets.hpp"
#include "sepscan/verdict.hpp"
#include "sepscan/wopt.hpp"

namespace sepscan {

/// normal . x >= offset, normal of unit length.
struct Halfspace {
  RealVector normal;
  double offset = 0.0;
};

/// Candidate witnesses: the Bloch unit ball (traceless, ||A||_2 <= 1) cut by
/// halfspaces. radius_proxy is the largest semi-axis of the Dikin ellipsoid
/// at the center.
struct SearchRegion {
  std::vector<Halfspace> halfspaces;
  BlochVector center;
  double radius_proxy = 1.0;
};

struct WitnessCert {
  HermitianOp a;             // traceless, ||a||_2 = 1
  double margin = 0.0;       // tr(a rho) - wopt value
  double delta = 0.0;
  double rho_value = 0.0;    // tr(a rho)
  double wopt_value = 0.0;
  ProductState maximizer;
  RealVector wsep_normal;    // Bloch coordinates of a, rescaled to ||.||_inf = 1
};

struct WitnessOptions {
  WoptOptions wopt;
  /// 0 uses iteration_cap(m, n, delta).
  std::size_t max_iterations = 0;
};

struct WitnessResult {
  Verdict verdict;
  std::optional<WitnessCert> cert;
  std::size_t iterations = 0;
  /// detected | dikin | iteration_cap | near_maximally_mixed | numerical_breakdown
  std::string termination;
  SearchRegion region;
};

/// 4 (m^2 n^2 - 1) ln(8/delta) + 64, rounded up.
std::size_t iteration_cap(int m, int n, double delta);

struct CenterResult {
  RealVector x;
  RealMatrix hessian;
  double gradient_norm = 0.0;
  int newton_steps = 0;
};

/// Damped Newton on -sum ln(n_i . x - o_i) - ln(1 - |x|^2) from a strictly
/// feasible start. Throws NumericalBreakdown when the start is infeasible or
/// the iteration stalls outside the region.
CenterResult analytic_center(const std::vector<Halfspace>& halfspaces, const RealVector& start,
                             double gradient_tol = 1e-8);

/// Largest semi-axis 1/sqrt(lambda_min(H)) of the Dikin ellipsoid.
double dikin_radius(const RealMatrix& hessian);

SearchRegion initial_region(const DensityMatrix& rho, const HermitianBasis& basis);
SearchRegion initial_region(const DensityMatrix& rho);

/// Cuts through the (normalized) center a and the origin with normal
/// v(rho) - v(sigma_a) projected orthogonally to a, then re-centers. Throws
/// NumericalBreakdown when the projected normal vanishes.
SearchRegion cut(const SearchRegion& region, const DensityMatrix& rho, const BlochVector& a,
                 const ProductState& sigma_a, const HermitianBasis& basis);

/// Weak separation by the cutting-plane witness search. Requires delta in
/// (0, 1] and net.delta <= delta / 10 (ConfigError otherwise). Entangled
/// carries a witness certificate; SeparableAssured means rho lies within
/// delta of the separable set in Hilbert-Schmidt norm. Neither is exact.
WitnessResult wsep_solve(const DensityMatrix& rho, double delta, const DeltaNet& net,
                         const WitnessOptions& options = {});

/// tr(a rho) - wopt_max(a, net).value for an existing witness.
double witness_margin(const DensityMatrix& rho, const HermitianOp& a, const DeltaNet& net,
                      const WoptOptions& options = {});

/// Net used by wsep_solve: phase-quotient complex net on the discretized
/// factor with covering radius delta / 10.
DeltaNet witness_net(const DensityMatrix& rho, double delta, const WoptOptions& options = {},
                     const std::filesystem::path& cache_dir = {});

}  // namespace sepscan
