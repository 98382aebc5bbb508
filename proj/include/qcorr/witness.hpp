#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qcorr/matops.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class WitnessFamily { negativity, random_robustness, generalized_robustness };

const char* to_string(WitnessFamily f);

// Seesaw restarts used to test positivity of W on product states.
struct Certificate {
  bool certified = false;
  double margin = std::numeric_limits<double>::quiet_NaN();
  int restarts = 0;
  std::uint64_t seed = 0;
};

struct Witness {
  CMatrix W;
  Cut cut;
  WitnessFamily family = WitnessFamily::negativity;
  // Human-readable constraint set, e.g. "0 <= W^TA <= I" or "Tr W = 1".
  std::string normalization;
  Certificate certificate;
};

struct EntanglementResult {
  double value = 0.0;        // max(0, -Tr(W rho))
  double expectation = 0.0;  // Tr(W rho), signed
  Witness witness;
  double tr_w2 = 0.0;
  double sup_norm = 0.0;
  int n_minus = 0;  // negativity family only

  // Cutting-plane diagnostics (zero/unset for analytic quantifiers).
  int cuts = 0;
  int rounds = 0;
  double relaxation_value = std::numeric_limits<double>::quiet_NaN();
  bool hit_cut_cap = false;
  int iterations = 0;  // inner solver iterations (extension master)
  bool solver_converged = true;
};

// Eigenvalues of rho^TA below this count as negative.
inline constexpr double kNegativeEigenvalueThreshold = -1e-10;

EntanglementResult negativity(const BipartiteState& state);

// (projector onto the negative eigenspace of rho^TA)^TA. Throws
// InvalidArgument for PPT input.
Witness negativity_witness(const BipartiteState& state);

// Analytic optimum over normalized decomposable witnesses.
EntanglementResult random_robustness_decomposable(const BipartiteState& state);

struct ProductVector {
  CVector a;
  CVector b;
  CVector ab() const { return tensor(a, b); }
};

std::vector<ProductVector> sample_product_states(const Cut& cut, int count, std::uint64_t seed);

struct SeesawConfig {
  int restarts = 200;
  std::uint64_t seed = 0;
  int max_iterations = 1000;
  double stall = 1e-10;
  int workers = 1;
};

struct SeesawResult {
  double value = 0.0;  // smallest <ab|W|ab> found
  ProductVector best;
  // One local minimum per restart, sorted by (value, restart index).
  std::vector<std::pair<double, ProductVector>> local_minima;
  int restarts = 0;
};

SeesawResult seesaw_min_product(const CMatrix& W, const Cut& cut, const SeesawConfig& config);
SeesawResult seesaw_min_product(const Witness& w, const SeesawConfig& config);

// Master problem of the cutting-plane loop. symmetric_extension optimizes
// over witnesses with a two-copy symmetric extension certificate, a set that
// already satisfies every product-state cut; ball_lp is the plain finite
// relaxation over accumulated cuts inside a Frobenius ball.
enum class MasterProblem { symmetric_extension, ball_lp };

const char* to_string(MasterProblem m);

struct CuttingPlaneConfig {
  MasterProblem master = MasterProblem::symmetric_extension;
  // symmetric_extension: also solve with the copy on A and keep the better.
  bool extend_both_sides = true;
  int extension_max_iterations = 20000;
  double extension_tolerance = 1e-7;

  double radius = 4.0;          // Frobenius ball on W
  int max_cuts = 500;           // separation cuts, excluding the initial sample
  int initial_samples = -1;     // random product constraints; -1 means d^2
  int cuts_per_round = 8;
  double master_tolerance = 1e-7;
  double violation_tolerance = 1e-6;
  double gap_tolerance = 1e-6;  // relaxation vs certified value
  int separation_restarts = 40;
  int certification_restarts = 200;
  std::uint64_t seed = 0;
  int workers = 1;
};

// General (non-decomposable) random robustness witness search: master
// problem, seesaw separation, and a final certification; any remaining
// violation is absorbed by mixing in identity. The reported value is a
// certified lower bound.
EntanglementResult random_robustness_cutting_plane(const BipartiteState& state,
                                                   const CuttingPlaneConfig& config = {});

struct GeneralizedRobustnessConfig {
  int max_iterations = 50000;
  double tolerance = 1e-6;
};

struct GeneralizedRobustnessResult {
  double value = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

// min Tr Y  s.t.  Y >= 0,  (rho + Y)^TA >= 0.
GeneralizedRobustnessResult generalized_robustness_ppt(
    const BipartiteState& state, const GeneralizedRobustnessConfig& config = {});

// Fills tr_w2, sup_norm, expectation and value from the witness and state.
void finalize_result(EntanglementResult& result, const BipartiteState& state);

}  // namespace qcorr
