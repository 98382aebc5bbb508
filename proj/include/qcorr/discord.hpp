#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qcorr/matops.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// Orthonormal basis of the measured factor, stored as columns.
struct MeasurementBasis {
  Side side = Side::B;
  CMatrix vectors;
};

MeasurementBasis computational_basis(const Cut& cut, Side side);

// sum_j (I (x) |f_j><f_j|) rho (I (x) |f_j><f_j|), or the mirror image on A.
BipartiteState dephase(const BipartiteState& state, const MeasurementBasis& basis);

// Unitary from Givens angles: U = diag(e^{i phases}) * prod_{i<j} G_ij(theta, phi),
// with pairs taken in lexicographic order. angles holds (theta, phi) pairs.
CMatrix givens_unitary(int dim, const std::vector<double>& angles,
                       const std::vector<double>& phases);

// Objective over unitaries U whose columns are the basis vectors. gradient,
// if set, returns the skew-Hermitian Riemannian gradient Gamma with
// d/dt f(exp(tZ) U) at t=0 equal to Re Tr(Gamma^dagger Z).
struct BasisObjective {
  std::function<double(const CMatrix&)> value;
  std::function<CMatrix(const CMatrix&)> gradient;
};

struct OptimizerConfig {
  int restarts = 32;
  std::uint64_t seed = 0;
  int max_iterations = 300;  // per stage and restart
  double tolerance = 1e-12;  // objective stall
  int workers = 1;
};

struct BasisOptimum {
  CMatrix unitary;
  double value = 0.0;
  int restart = 0;        // index of the winning start
  int iterations = 0;     // summed over stages of the winning start
  double residual = 0.0;  // last objective change of the winning start
};

// Multi-start descent on the unitary group with exponential retraction and
// Armijo steps. Restart 0 starts at the identity, the others at random
// Givens unitaries. Every stage starts where the previous one stopped; the
// last stage is the objective that is reported (earlier ones serve as
// smoothed continuations). Ties go to the lowest restart index.
BasisOptimum basis_optimizer(const std::vector<BasisObjective>& stages, int dim,
                             const OptimizerConfig& config);
BasisOptimum basis_optimizer(const BasisObjective& objective, int dim,
                             const OptimizerConfig& config);

struct DiscordConfig {
  OptimizerConfig optimizer;
  // Smoothing widths for |x| ~ sqrt(x^2 + mu^2) used before the exact p = 1
  // objective.
  std::vector<double> smoothing = {3e-2, 1e-3, 1e-5};
  // p = 1: projected subgradient refinement of the blocks for the best basis.
  bool refine_inner = true;
  int refine_iterations = 500;
};

struct DiscordResult {
  double p = 2.0;
  double value = 0.0;  // |rho - xi|_p^p
  MeasurementBasis basis;
  BipartiteState classical_state;
  int restarts = 0;
  int iterations = 0;
  double residual = 0.0;
  // "dephased" or "refined"; both values are kept for p = 1.
  std::string inner_mode = "dephased";
  double dephased_value = 0.0;
  double refined_value = 0.0;
};

DiscordResult d2_discord(const BipartiteState& state, Side side = Side::B,
                         const DiscordConfig& config = {});
DiscordResult d1_discord(const BipartiteState& state, Side side = Side::B,
                         const DiscordConfig& config = {});
DiscordResult dp_discord(const BipartiteState& state, double p, Side side = Side::B,
                         const DiscordConfig& config = {});

// U -> |rho - dephase(rho, U)|_p^p with its analytic gradient; smoothing > 0
// replaces |x| by sqrt(x^2 + smoothing^2) (meant for p = 1).
BasisObjective dephasing_objective(const BipartiteState& state, double p, Side side = Side::B,
                                   double smoothing = 0.0);

// |rho - dephase(rho, basis)|_p^p.
double dephasing_distance(const BipartiteState& state, const MeasurementBasis& basis, double p);

// I(A:B) = S(A) + S(B) - S(AB) in bits.
double mutual_information(const BipartiteState& state);

}  // namespace qcorr
