#pragma once

#include <cstddef>

#include "sepscan/linalg.hpp"
#include "sepscan/nets.hpp"

namespace sepscan {

/// |alpha> (x) |beta>, both unit vectors.
struct ProductState {
  ComplexVector alpha;
  ComplexVector beta;

  [[nodiscard]] ComplexVector vector() const { return kron(alpha, beta); }
};

struct WoptResult {
  ProductState maximizer;
  double value = 0.0;      // <alpha beta| A |alpha beta>
  double guarantee = 0.0;  // 2 delta ||A||_2
  std::size_t net_index = 0;
};

// Signed maximizes the form itself; Absolute maximizes its magnitude and
// still reports the signed value at the maximizer.
enum class WoptMode { Signed, Absolute };

struct WoptOptions {
  WoptMode mode = WoptMode::Signed;
  /// Factor scanned over the net; the other one is solved by eigenvector.
  Subsystem discretized = Subsystem::A;
  /// 0 picks the process-wide default (see set_default_threads).
  int threads = 0;
};

void set_default_threads(int threads);
int default_threads();

/// B_x on the undiscretized factor: (B_x)_{jk} = <x (x) e_j| A |x (x) e_k> for
/// side A, and <e_j (x) x| A |e_k (x) x> for side B.
HermitianOp conditioned_operator(const HermitianOp& a, int m, int n, const ComplexVector& x,
                                 Subsystem side = Subsystem::A);

/// <alpha beta| A |alpha beta>
double product_expectation(const HermitianOp& a, const ProductState& s);

/// Net scan with exact eigenvector extraction on the other factor. The net
/// must live on C^m (side A) or C^n (side B). Result is within 2 delta ||A||_2
/// of the true maximum over product states; ties go to the lowest net index.
WoptResult wopt_max(const HermitianOp& a, int m, int n, const DeltaNet& net,
                    const WoptOptions& options = {});

/// Swaps tensor factors: the result acts on C^n (x) C^m.
HermitianOp swap_factors(const HermitianOp& a, int m, int n);

}  // namespace sepscan
