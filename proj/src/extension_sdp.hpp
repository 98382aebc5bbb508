#pragma once

#include "qcorr/matops.hpp"

namespace qcorr::detail {

struct ExtensionSdpResult {
  CMatrix W;                // Tr W = 1
  double objective = 0.0;   // Tr(W rho)
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// min Tr(W rho) over Tr W = 1 and
//   Pi (W (x) I_B') Pi = Pi (P + Q1^TA + Q2^TB') Pi,   P, Q1, Q2 >= 0,
// with Pi the projector onto A (x) Sym^2(B). Every feasible W is positive on
// product states (a two-copy symmetric extension certificate). Solved by
// ADMM with an exact projection onto the affine constraints.
ExtensionSdpResult extension_witness_sdp(const CMatrix& rho, const Cut& cut, int max_iterations,
                                         double tolerance);

}  // namespace qcorr::detail
