#include "sepscan/onesided.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sepscan/error.hpp"

namespace sepscan {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Entangled:
      return "Entangled";
    case Outcome::SeparableAssured:
      return "SeparableAssured";
    case Outcome::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

Outcome outcome_from_string(std::string_view s) {
  if (s == "Entangled") return Outcome::Entangled;
  if (s == "SeparableAssured") return Outcome::SeparableAssured;
  if (s == "Unknown") return Outcome::Unknown;
  throw InputError("unknown outcome '" + std::string(s) + "'");
}

Verdict ppt_test(const DensityMatrix& rho, const OneSidedTolerances& t) {
  const double lmin =
      lambda_min(partial_transpose(rho.op(), rho.m(), rho.n(), Subsystem::B));
  if (lmin < -t.eigenvalue) return Verdict::entangled("ppt", true, lmin);
  if (rho.dim() <= 6) return Verdict::separable("ppt", true, lmin);
  return Verdict::unknown("ppt", lmin);
}

Verdict reduction_test(const DensityMatrix& rho, const OneSidedTolerances& t) {
  const int m = rho.m();
  const int n = rho.n();
  const HermitianOp rho_a = partial_trace(rho, Subsystem::B);
  const HermitianOp rho_b = partial_trace(rho, Subsystem::A);
  const ComplexMatrix left = kron(rho_a.matrix(), ComplexMatrix::Identity(n, n));
  const ComplexMatrix right = kron(ComplexMatrix::Identity(m, m), rho_b.matrix());
  const double la = lambda_min(HermitianOp(left - rho.matrix()));
  const double lb = lambda_min(HermitianOp(right - rho.matrix()));
  const double worst = std::min(la, lb);
  if (worst < -t.eigenvalue) return Verdict::entangled("reduction", true, worst);
  return Verdict::unknown("reduction", worst);
}

double entropy(const RealVector& spectrum, int alpha) {
  if (alpha == 2) {
    return -std::log(spectrum.squaredNorm());
  }
  if (alpha == 1) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
      const double p = spectrum[i];
      if (p > 0.0) s -= p * std::log(p);
    }
    return s;
  }
  throw InputError("entropy: alpha must be 1 or 2");
}

Verdict entropic_test(const DensityMatrix& rho, int alpha, const OneSidedTolerances& t) {
  if (alpha != 1 && alpha != 2) throw InputError("entropic_test: alpha must be 1 or 2");
  const std::string reason = alpha == 2 ? "entropic_2" : "entropic_1";
  const RealVector s_ab = eigenvalues(rho.op());
  const RealVector s_a = eigenvalues(partial_trace(rho, Subsystem::B));
  const RealVector s_b = eigenvalues(partial_trace(rho, Subsystem::A));
  const double gap =
      entropy(s_ab, alpha) - std::max(entropy(s_a, alpha), entropy(s_b, alpha));
  if (gap < -t.norm) return Verdict::entangled(reason, true, gap);
  return Verdict::unknown(reason, gap);
}

namespace {

// Largest prefix-sum excess of x over y (y zero-padded to x's length).
double majorization_excess(const RealVector& x, const RealVector& y) {
  double sx = 0.0;
  double sy = 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    sx += x[k];
    if (k < y.size()) sy += y[k];
    worst = std::max(worst, sx - sy);
  }
  return worst;
}

}  // namespace

Verdict majorization_test(const DensityMatrix& rho, const OneSidedTolerances& t) {
  const RealVector s_ab = eigenvalues(rho.op());
  const RealVector s_a = eigenvalues(partial_trace(rho, Subsystem::B));
  const RealVector s_b = eigenvalues(partial_trace(rho, Subsystem::A));
  const double excess = std::max(majorization_excess(s_ab, s_a), majorization_excess(s_ab, s_b));
  if (excess > t.norm) return Verdict::entangled("majorization", true, excess);
  return Verdict::unknown("majorization", excess);
}

Verdict ccnr_test(const DensityMatrix& rho, const OneSidedTolerances& t) {
  const double norm = trace_norm(realign(rho.op(), rho.m(), rho.n()));
  if (norm > 1.0 + t.norm) return Verdict::entangled("ccnr", true, norm);
  return Verdict::unknown("ccnr", norm);
}

Verdict frobenius_ball_test(const DensityMatrix& rho, const OneSidedTolerances&) {
  const double d = rho.dim();
  const ComplexMatrix diff = rho.matrix() - ComplexMatrix::Identity(rho.dim(), rho.dim()) / d;
  const double dist2 = diff.squaredNorm();
  if (dist2 <= 1.0 / (d * (d - 1.0))) return Verdict::separable("frobenius_ball", true, dist2);
  return Verdict::unknown("frobenius_ball", dist2);
}

Verdict lambda_min_ball_test(const DensityMatrix& rho, const OneSidedTolerances&) {
  const double lmin = lambda_min(rho.op());
  if (lmin >= 1.0 / (2.0 + rho.dim())) return Verdict::separable("lambda_min_ball", true, lmin);
  return Verdict::unknown("lambda_min_ball", lmin);
}

Verdict two_by_n_pt_test(const DensityMatrix& rho, const OneSidedTolerances& t) {
  if (rho.m() != 2) throw InputError("two_by_n_pt_test: requires m == 2");
  const HermitianOp pt = partial_transpose(rho.op(), rho.m(), rho.n(), Subsystem::A);
  const double dist = (rho.matrix() - pt.matrix()).norm();
  if (dist <= t.norm) return Verdict::separable("two_by_n_pt", true, dist);
  return Verdict::unknown("two_by_n_pt", dist);
}

Verdict pipeline(const DensityMatrix& rho, const OneSidedTolerances& t) {
  if (auto v = frobenius_ball_test(rho, t); v.decisive()) return v;
  if (auto v = lambda_min_ball_test(rho, t); v.decisive()) return v;
  if (auto v = ppt_test(rho, t); v.decisive()) return v;
  if (rho.m() == 2) {
    if (auto v = two_by_n_pt_test(rho, t); v.decisive()) return v;
  }
  if (auto v = reduction_test(rho, t); v.decisive()) return v;
  if (auto v = majorization_test(rho, t); v.decisive()) return v;
  if (auto v = entropic_test(rho, 2, t); v.decisive()) return v;
  if (auto v = entropic_test(rho, 1, t); v.decisive()) return v;
  if (auto v = ccnr_test(rho, t); v.decisive()) return v;
  return Verdict::unknown("none");
}

}  // namespace sepscan
