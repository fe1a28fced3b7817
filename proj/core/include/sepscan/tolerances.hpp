#pragma once

namespace sepscan {

// Default numerical tolerances. Every value here can be overridden from the
// command line; the structs that consume them carry their own copies.
namespace tol {

inline constexpr double kHermitian = 1e-10;       // per unit dimension
inline constexpr double kTrace = 1e-9;
inline constexpr double kPsd = 1e-9;
inline constexpr double kJacobiRelative = 1e-12;  // off-diagonal mass / ||H||_F
inline constexpr double kEigenvalue = 1e-9;       // one-sided eigenvalue tests
inline constexpr double kNorm = 1e-8;             // one-sided norm tests
inline constexpr double kUnitVector = 1e-10;

}  // namespace tol
}  // namespace sepscan
