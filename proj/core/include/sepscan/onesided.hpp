#pragma once

#include "sepscan/linalg.hpp"
#include "sepscan/verdict.hpp"

namespace sepscan {

struct OneSidedTolerances {
  double eigenvalue = tol::kEigenvalue;
  double norm = tol::kNorm;
};

// Necessary conditions: return Entangled on violation, Unknown otherwise.
// PPT additionally returns an exact SeparableAssured when m*n <= 6.
Verdict ppt_test(const DensityMatrix& rho, const OneSidedTolerances& t = {});
Verdict reduction_test(const DensityMatrix& rho, const OneSidedTolerances& t = {});
/// alpha must be 1 (von Neumann) or 2 (collision entropy).
Verdict entropic_test(const DensityMatrix& rho, int alpha, const OneSidedTolerances& t = {});
Verdict majorization_test(const DensityMatrix& rho, const OneSidedTolerances& t = {});
Verdict ccnr_test(const DensityMatrix& rho, const OneSidedTolerances& t = {});

// Sufficient conditions: return SeparableAssured on success, Unknown otherwise.
Verdict frobenius_ball_test(const DensityMatrix& rho, const OneSidedTolerances& t = {});
Verdict lambda_min_ball_test(const DensityMatrix& rho, const OneSidedTolerances& t = {});
/// Requires m == 2; throws InputError otherwise.
Verdict two_by_n_pt_test(const DensityMatrix& rho, const OneSidedTolerances& t = {});

/// Runs the cheap sufficient tests, PPT, the 2xN test (m == 2), reduction,
/// majorization, entropic (alpha = 2 then 1) and CCNR in that order; the
/// first decisive verdict wins.
Verdict pipeline(const DensityMatrix& rho, const OneSidedTolerances& t = {});

/// Renyi/von Neumann entropy of a spectrum, 0 log 0 := 0.
double entropy(const RealVector& spectrum, int alpha);

}  // namespace sepscan
