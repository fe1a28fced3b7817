#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sepscan/tolerances.hpp"

namespace sepscan {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class Subsystem { A, B };

/// Square complex matrix equal to its adjoint.
///
/// Construction symmetrizes the input as (X + X^dagger)/2 and keeps the
/// Frobenius norm of the discarded anti-Hermitian part as the symmetrization
/// residual. Inputs whose residual exceeds tol * dim are rejected.
class HermitianOp {
 public:
  HermitianOp() = default;
  explicit HermitianOp(const ComplexMatrix& m, double tol = tol::kHermitian);

  static HermitianOp identity(int dim);
  static HermitianOp zero(int dim);

  [[nodiscard]] int dim() const { return static_cast<int>(matrix_.rows()); }
  [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
  [[nodiscard]] double symmetrization_residual() const { return residual_; }
  [[nodiscard]] double trace() const;
  [[nodiscard]] double frobenius_norm() const { return matrix_.norm(); }

  friend HermitianOp operator+(const HermitianOp& a, const HermitianOp& b);
  friend HermitianOp operator-(const HermitianOp& a, const HermitianOp& b);
  friend HermitianOp operator*(double s, const HermitianOp& a);

 private:
  ComplexMatrix matrix_;
  double residual_ = 0.0;
};

/// Hilbert-Schmidt inner product tr(AB) of two Hermitian operators (real).
double hs_inner(const HermitianOp& a, const HermitianOp& b);

/// Eigen-decomposition of a Hermitian operator, values nonincreasing.
struct EigDecomposition {
  RealVector values;
  ComplexMatrix vectors;  // column j pairs with values[j]
};

/// Cyclic complex Jacobi. Sweeps until the off-diagonal Frobenius mass drops
/// below kJacobiRelative * ||H||_F.
EigDecomposition eig_hermitian(const HermitianOp& h);

/// Eigenvalues only, nonincreasing.
RealVector eigenvalues(const HermitianOp& h);
double lambda_min(const HermitianOp& h);
double lambda_max(const HermitianOp& h);

/// Sum of singular values. Uses the Hermitian dilation [[0, X], [X^dagger, 0]]
/// whose spectrum is {+-sigma_i}, which avoids squaring small singular values.
double trace_norm(const ComplexMatrix& x);

/// Unit-trace PSD operator on C^m (x) C^n, A-index major.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(int m, int n, const HermitianOp& op, double trace_tol = tol::kTrace,
                double psd_tol = tol::kPsd);
  DensityMatrix(int m, int n, const ComplexMatrix& matrix);

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int dim() const { return m_ * n_; }
  [[nodiscard]] const HermitianOp& op() const { return op_; }
  [[nodiscard]] const ComplexMatrix& matrix() const { return op_.matrix(); }

 private:
  int m_ = 0;
  int n_ = 0;
  HermitianOp op_;
};

/// Trace out subsystem `traced`. The result acts on the other factor.
HermitianOp partial_trace(const HermitianOp& op, int m, int n, Subsystem traced);
HermitianOp partial_trace(const DensityMatrix& rho, Subsystem traced);

/// Transpose the `which` tensor factor.
HermitianOp partial_transpose(const HermitianOp& op, int m, int n, Subsystem which);

/// Realignment: the linear map with U(A (x) B) = vec(A) vec(B)^T, vec stacking
/// columns. Result is m^2 x n^2.
ComplexMatrix realign(const HermitianOp& op, int m, int n);

/// True iff |tr(o^2) - alpha^2| <= tol and |tr(o^3) - alpha^3| <= tol.
/// Throws InputError unless 0 < alpha <= 1.
bool is_unnormalized_pure(const HermitianOp& o, double alpha, double tol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// |psi><psi|
ComplexMatrix outer(const ComplexVector& psi);

/// (U (x) V) rho (U (x) V)^dagger
HermitianOp local_conjugate(const HermitianOp& op, const ComplexMatrix& u,
                            const ComplexMatrix& v);

}  // namespace sepscan
