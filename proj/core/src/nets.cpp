#include "sepscan/nets.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "sepscan/error.hpp"

namespace sepscan {

namespace {

struct Range {
  int lo;
  int hi;
};

// Calls fn(k) for each integer vector of length d with max |k_i| = g, each
// exactly once: classify by the first coordinate f that attains |k_f| = g.
template <typename Fn>
void enumerate_cube_surface(int d, int g, bool nonneg_first, Fn&& fn) {
  std::vector<int> k(static_cast<size_t>(d));
  std::vector<Range> ranges(static_cast<size_t>(d));
  for (int f = 0; f < d; ++f) {
    for (int sign : {-1, 1}) {
      if (nonneg_first && f == 0 && sign < 0) continue;
      bool empty = false;
      for (int i = 0; i < d; ++i) {
        Range r{};
        if (i < f) {
          r = {-(g - 1), g - 1};
          if (nonneg_first && i == 0) r.lo = 0;
        } else if (i == f) {
          r = {sign * g, sign * g};
        } else {
          r = {-g, g};
        }
        if (r.lo > r.hi) empty = true;
        ranges[static_cast<size_t>(i)] = r;
      }
      if (empty) continue;
      for (int i = 0; i < d; ++i) k[static_cast<size_t>(i)] = ranges[static_cast<size_t>(i)].lo;
      while (true) {
        fn(k);
        int i = d - 1;
        while (i >= 0) {
          auto& ki = k[static_cast<size_t>(i)];
          if (ki < ranges[static_cast<size_t>(i)].hi) {
            ++ki;
            break;
          }
          ki = ranges[static_cast<size_t>(i)].lo;
          --i;
        }
        if (i < 0) break;
      }
    }
  }
}

std::uint64_t count_cube_surface(int d, int g, bool nonneg_first) {
  std::uint64_t total = 0;
  for (int f = 0; f < d; ++f) {
    for (int sign : {-1, 1}) {
      if (nonneg_first && f == 0 && sign < 0) continue;
      std::uint64_t c = 1;
      for (int i = 0; i < d; ++i) {
        std::int64_t width = 0;
        if (i < f) {
          width = (nonneg_first && i == 0) ? g : 2 * (g - 1) + 1;
        } else if (i == f) {
          width = 1;
        } else {
          width = 2 * g + 1;
        }
        c *= static_cast<std::uint64_t>(std::max<std::int64_t>(width, 0));
      }
      total += c;
    }
  }
  return total;
}

void real_to_complex(int m, const NetOptions& opt, const double* c, Complex* out) {
  if (opt.field == NetField::Real) {
    for (int j = 0; j < m; ++j) out[j] = c[j];
    return;
  }
  if (opt.phase_quotient) {
    out[0] = c[0];
    for (int j = 1; j < m; ++j) out[j] = Complex(c[2 * j - 1], c[2 * j]);
    return;
  }
  for (int j = 0; j < m; ++j) out[j] = Complex(c[2 * j], c[2 * j + 1]);
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 2.0)) throw InputError("build_net: delta must lie in (0, 2]");
}

}  // namespace

DeltaNet::DeltaNet(int m, double delta, NetOptions options, int grid, std::vector<Complex> points)
    : m_(m), delta_(delta), options_(options), grid_(grid), points_(std::move(points)) {
  if (m < 1) throw InputError("DeltaNet: dimension must be positive");
  if (points_.size() % static_cast<size_t>(m) != 0) {
    throw InputError("DeltaNet: point buffer is not a multiple of m");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    double norm2 = 0.0;
    const Complex* p = point_data(i);
    for (int j = 0; j < m; ++j) norm2 += std::norm(p[j]);
    if (std::abs(std::sqrt(norm2) - 1.0) > tol::kUnitVector) {
      throw InputError("DeltaNet: point " + std::to_string(i) + " is not a unit vector");
    }
  }
}

ComplexVector DeltaNet::point(std::size_t i) const {
  return Eigen::Map<const ComplexVector>(point_data(i), m_);
}

int net_real_dimension(int m, const NetOptions& options) {
  if (options.field == NetField::Real) return m;
  return options.phase_quotient ? 2 * m - 1 : 2 * m;
}

int net_grid(int m, double delta, const NetOptions& options) {
  check_delta(delta);
  const int d = net_real_dimension(m, options);
  const double g = std::ceil(std::sqrt(static_cast<double>(d - 1)) / (2.0 * delta));
  return std::max(1, static_cast<int>(g));
}

std::uint64_t net_size(int m, double delta, const NetOptions& options) {
  check_delta(delta);
  if (delta >= 2.0) return 1;
  return count_cube_surface(net_real_dimension(m, options), net_grid(m, delta, options),
                            options.phase_quotient);
}

double net_size_constant(int m) {
  const double d = 2.0 * m;
  const double c = std::max(std::sqrt(d - 1.0) / 2.0, 3.0);
  return 2.0 * d * std::pow(c, d - 1.0);
}

DeltaNet build_net(int m, double delta, const NetOptions& options) {
  if (m < 1) throw InputError("build_net: dimension must be positive");
  check_delta(delta);
  if (delta >= 2.0) {
    // Any single point is within distance 2 of the whole sphere.
    std::vector<Complex> pts(static_cast<size_t>(m), Complex(0.0));
    pts[0] = 1.0;
    return DeltaNet(m, delta, options, 0, std::move(pts));
  }
  const int d = net_real_dimension(m, options);
  const int g = net_grid(m, delta, options);
  const std::uint64_t count = count_cube_surface(d, g, options.phase_quotient);

  std::vector<Complex> pts;
  pts.reserve(count * static_cast<std::uint64_t>(m));
  std::vector<double> c(static_cast<size_t>(d));
  std::vector<Complex> z(static_cast<size_t>(m));
  enumerate_cube_surface(d, g, options.phase_quotient, [&](const std::vector<int>& k) {
    double norm2 = 0.0;
    for (int v : k) norm2 += static_cast<double>(v) * v;
    const double inv = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < d; ++i) c[static_cast<size_t>(i)] = k[static_cast<size_t>(i)] * inv;
    real_to_complex(m, options, c.data(), z.data());
    pts.insert(pts.end(), z.begin(), z.end());
  });
  return DeltaNet(m, delta, options, g, std::move(pts));
}

double net_distance(const DeltaNet& net, const Complex* x, const ComplexVector& y) {
  Complex ip(0.0);
  for (int j = 0; j < net.m(); ++j) ip += std::conj(x[j]) * y[j];
  // |x - y|^2 = 2 - 2 Re<x,y>; the quotient minimizes over e^{i theta} x.
  const double overlap = net.options().phase_quotient ? std::abs(ip) : ip.real();
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
}

NearestPoint nearest_point(const DeltaNet& net, const ComplexVector& y) {
  if (y.size() != net.m()) throw InputError("nearest_point: dimension mismatch");
  NearestPoint best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < net.size(); ++i) {
    const double d = net_distance(net, net.point_data(i), y);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

CoverageReport verify_coverage(const DeltaNet& net, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("verify_coverage: need at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  CoverageReport report;
  report.samples = samples;
  ComplexVector y(net.m());
  for (std::size_t s = 0; s < samples; ++s) {
    for (int j = 0; j < net.m(); ++j) {
      const double re = gauss(rng);
      const double im = net.options().field == NetField::Complex ? gauss(rng) : 0.0;
      y[j] = Complex(re, im);
    }
    y.normalize();
    report.max_gap = std::max(report.max_gap, nearest_point(net, y).distance);
  }
  report.pass = report.max_gap <= net.delta();
  return report;
}

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'E', 'P', 'S', 'N', 'E', 'T', '\0'};

template <typename T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool read_pod(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof(T)));
}

}  // namespace

std::filesystem::path net_cache_path(const std::filesystem::path& dir, int m, double delta,
                                     const NetOptions& options) {
  std::ostringstream name;
  name << "net_" << (options.field == NetField::Complex ? "c" : "r")
       << (options.phase_quotient ? "q" : "f") << "_m" << m << "_d" << std::hexfloat << delta
       << "_v" << kNetConstructionVersion << ".bin";
  return dir / name.str();
}

void save_net(const DeltaNet& net, const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw ConfigError("cannot write net cache " + file.string());
  os.write(kMagic.data(), kMagic.size());
  write_pod(os, kNetConstructionVersion);
  write_pod(os, static_cast<std::int32_t>(net.m()));
  write_pod(os, static_cast<std::uint8_t>(net.options().field == NetField::Complex ? 0 : 1));
  write_pod(os, static_cast<std::uint8_t>(net.options().phase_quotient ? 1 : 0));
  write_pod(os, static_cast<std::int32_t>(net.grid()));
  write_pod(os, net.delta());
  write_pod(os, static_cast<std::uint64_t>(net.size()));
  os.write(reinterpret_cast<const char*>(net.raw().data()),
           static_cast<std::streamsize>(net.raw().size() * sizeof(Complex)));
  if (!os) throw ConfigError("failed writing net cache " + file.string());
}

std::optional<DeltaNet> load_net(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) return std::nullopt;
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  std::uint32_t version = 0;
  std::int32_t m = 0;
  std::uint8_t field = 0;
  std::uint8_t quotient = 0;
  std::int32_t grid = 0;
  double delta = 0.0;
  std::uint64_t count = 0;
  if (!is || magic != kMagic || !read_pod(is, version) || version != kNetConstructionVersion ||
      !read_pod(is, m) || !read_pod(is, field) || !read_pod(is, quotient) ||
      !read_pod(is, grid) || !read_pod(is, delta) || !read_pod(is, count) || m < 1) {
    return std::nullopt;
  }
  std::vector<Complex> pts(count * static_cast<std::uint64_t>(m));
  if (!is.read(reinterpret_cast<char*>(pts.data()),
               static_cast<std::streamsize>(pts.size() * sizeof(Complex)))) {
    return std::nullopt;
  }
  NetOptions opt{field == 0 ? NetField::Complex : NetField::Real, quotient != 0};
  return DeltaNet(m, delta, opt, grid, std::move(pts));
}

DeltaNet cached_build_net(int m, double delta, const NetOptions& options,
                          const std::filesystem::path& dir) {
  if (dir.empty()) return build_net(m, delta, options);
  const auto file = net_cache_path(dir, m, delta, options);
  if (auto net = load_net(file)) {
    if (net->m() == m && net->delta() == delta && net->options().field == options.field &&
        net->options().phase_quotient == options.phase_quotient) {
      return std::move(*net);
    }
  }
  DeltaNet net = build_net(m, delta, options);
  std::filesystem::create_directories(dir);
  save_net(net, file);
  return net;
}

}  // namespace sepscan
