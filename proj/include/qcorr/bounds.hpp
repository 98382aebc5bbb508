#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcorr/discord.hpp"
#include "qcorr/states.hpp"
#include "qcorr/witness.hpp"

namespace qcorr {

// (E_w / |W|_q)^p with 1/p + 1/q = 1 (q = inf for p = 1). Holds for any
// witness, optimal or not.
double bound_dp(double e_w, const Witness& w, double p);

struct NegativityBound {
  double n2_over_nminus = 0.0;    // N^2 / n_-
  double n2_over_d_minus_1 = 0.0;  // weaker variant, N^2 / (d - 1)
  double negativity = 0.0;
  int n_minus = 0;
};

NegativityBound bound_d2_negativity(const BipartiteState& state);

struct BoundCheck {
  std::string name;
  double lhs = 0.0;  // the discord (or the larger side of the inequality)
  double rhs = 0.0;  // the bound
  double margin = 0.0;
};

struct BoundsConfig {
  Side side = Side::B;
  DiscordConfig discord;
  // Extra Schatten orders for the general-p bound; 1 and 2 are always done.
  std::vector<double> general_p;
  bool certified_robustness = false;
  CuttingPlaneConfig cutting_plane;
  bool generalized_robustness = false;
  GeneralizedRobustnessConfig generalized;
  double slack = 1e-6;
  bool throw_on_violation = true;
  int workers = 1;  // grid points evaluated concurrently by sweep_family
};

struct BoundReport {
  std::string label;
  Cut cut;
  EntanglementResult negativity;
  EntanglementResult rr_decomposable;
  std::optional<EntanglementResult> rr_certified;
  std::optional<GeneralizedRobustnessResult> rg_ppt;
  DiscordResult d1;
  DiscordResult d2;
  std::vector<DiscordResult> dp;

  double bound_d1_wn = 0.0;  // N / |W_n|_inf
  double bound_d1_wr = 0.0;
  double bound_d1_wc = 0.0;  // certified general witness, 0 if not run
  double bound_d2_wn = 0.0;  // N^2 / Tr W_n^2
  double bound_d2_wr = 0.0;
  double bound_d2_wc = 0.0;
  NegativityBound negativity_bound;

  std::vector<BoundCheck> checks;
  double min_margin = 0.0;
};

// Computes every quantifier, both discords and all applicable bounds, and
// checks each inequality. Throws BoundViolation (with the offending state,
// witness and discord serialized in detail()) when a margin is below
// -slack and throw_on_violation is set. A precomputed certified witness can
// be passed to skip the general witness search.
BoundReport verify_bounds(const BipartiteState& state, const BoundsConfig& config = {},
                          const Witness* certified_witness = nullptr);

enum class Family { werner, horodecki, upb_mix };

const char* to_string(Family f);
Family family_from_string(const std::string& name);

struct FamilySpec {
  Family family = Family::werner;
  int dA = 5;  // werner only
};

BipartiteState family_state(const FamilySpec& spec, double param);

struct SweepResult {
  FamilySpec spec;
  std::vector<double> grid;
  std::vector<BoundReport> reports;
  // upb_mix with certified robustness: the noise level at which the
  // certified witness stops detecting, s* = E0 / (E0 + Tr W / d).
  std::optional<double> detection_threshold;
};

// One report per grid point, in grid order. For upb_mix the certified
// witness is computed once on the noiseless state and reused: with Tr W = 1,
// white noise shifts every candidate's objective by the same amount, so the
// optimum over the witness class does not move.
SweepResult sweep_family(const FamilySpec& spec, const std::vector<double>& grid,
                         const BoundsConfig& config = {});

// Noise level where -Tr(W ((1-s) rho + s I/d)) reaches zero; 0 if W does not
// detect rho.
double noise_detection_threshold(const Witness& w, const BipartiteState& state);

double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y);

struct TableCell {
  std::string table;
  std::string row;
  std::string column;
  double computed = 0.0;
  std::optional<double> published;
  double reference = 0.0;  // value the verdict compares against
  double tolerance = 0.0;
  bool relative = false;
  bool informational = false;
  bool pass = true;
  std::string note;
};

struct TablesConfig {
  DiscordConfig discord;
  Side side = Side::B;
  double tolerance_scale = 1.0;  // multiplies every cell tolerance
  bool include_table3_rr = false;
};

struct TablesReport {
  std::vector<TableCell> cells;
  bool pass = true;  // all non-informational cells pass
};

TablesReport reproduce_tables(const TablesConfig& config = {});

}  // namespace qcorr
