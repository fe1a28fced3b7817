#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "sepscan/linalg.hpp"

namespace sepscan {

enum class NetField { Complex, Real };

struct NetOptions {
  NetField field = NetField::Complex;
  /// Keep one representative per global phase (complex) or sign (real):
  /// points whose first coordinate is real and nonnegative. Any objective
  /// invariant under x -> e^{i theta} x sees the same covering radius.
  bool phase_quotient = false;
};

inline constexpr std::uint32_t kNetConstructionVersion = 1;

/// Finite point set on the unit sphere of C^m (or R^m embedded in C^m) with
/// covering radius delta.
///
/// Points are {k / |k| : k integer, max_i |k_i| = g} in real coordinates
/// (Re x_0, Im x_0, Re x_1, ...), g = ceil(sqrt(D - 1) / (2 delta)) with D the
/// real dimension. Rounding a sphere point scaled onto the cube surface moves
/// it by at most sqrt(D - 1)/2, and radial projection onto the sphere is
/// 1-Lipschitz outside the unit ball, so the covering radius is at most delta.
/// Nets built with grids g and t*g are nested.
class DeltaNet {
 public:
  DeltaNet(int m, double delta, NetOptions options, int grid, std::vector<Complex> points);

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] double delta() const { return delta_; }
  [[nodiscard]] const NetOptions& options() const { return options_; }
  [[nodiscard]] int grid() const { return grid_; }
  [[nodiscard]] std::size_t size() const { return points_.size() / static_cast<std::size_t>(m_); }

  [[nodiscard]] const Complex* point_data(std::size_t i) const {
    return points_.data() + i * static_cast<std::size_t>(m_);
  }
  [[nodiscard]] ComplexVector point(std::size_t i) const;
  [[nodiscard]] const std::vector<Complex>& raw() const { return points_; }

 private:
  int m_;
  double delta_;
  NetOptions options_;
  int grid_;
  std::vector<Complex> points_;
};

/// Real coordinate dimension the construction grids over.
int net_real_dimension(int m, const NetOptions& options);
int net_grid(int m, double delta, const NetOptions& options);
/// Number of points build_net would produce, without building it.
std::uint64_t net_size(int m, double delta, const NetOptions& options = {});
/// C(m) with |net| <= C(m) (1 + 2/delta)^{2m} for every delta in (0, 2].
double net_size_constant(int m);

DeltaNet build_net(int m, double delta, const NetOptions& options = {});

/// Distance between unit vectors, modulo phase (or sign) when the net
/// quotients it out.
double net_distance(const DeltaNet& net, const Complex* x, const ComplexVector& y);

struct NearestPoint {
  std::size_t index = 0;
  double distance = 0.0;
};
NearestPoint nearest_point(const DeltaNet& net, const ComplexVector& y);

struct CoverageReport {
  double max_gap = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

/// Brute-force Monte-Carlo covering check with uniformly random unit vectors.
CoverageReport verify_coverage(const DeltaNet& net, std::size_t samples, std::uint64_t seed);

// Binary cache keyed by (m, delta, field, quotient, construction version).
std::filesystem::path net_cache_path(const std::filesystem::path& dir, int m, double delta,
                                     const NetOptions& options);
void save_net(const DeltaNet& net, const std::filesystem::path& file);
std::optional<DeltaNet> load_net(const std::filesystem::path& file);
/// Loads from `dir` when present, otherwise builds and stores. Empty dir
/// disables caching.
DeltaNet cached_build_net(int m, double delta, const NetOptions& options,
                          const std::filesystem::path& dir);

}  // namespace sepscan
