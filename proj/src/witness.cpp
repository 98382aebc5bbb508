#include "qcorr/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "extension_sdp.hpp"
#include "master_solver.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

const char* to_string(WitnessFamily f) {
  switch (f) {
    case WitnessFamily::negativity:
      return "negativity";
    case WitnessFamily::random_robustness:
      return "random_robustness";
    case WitnessFamily::generalized_robustness:
      return "generalized_robustness";
  }
  return "unknown";
}

const char* to_string(MasterProblem m) {
  return m == MasterProblem::symmetric_extension ? "symmetric_extension" : "ball_lp";
}

void finalize_result(EntanglementResult& result, const BipartiteState& state) {
  const CMatrix& w = result.witness.W;
  result.expectation = trace_inner(w, state.rho).real();
  result.value = std::max(0.0, -result.expectation);
  result.tr_w2 = w.squaredNorm();
  result.sup_norm = w.size() ? schatten(w, kInfNorm) : 0.0;
}

namespace {

struct NegativeSpace {
  CMatrix projector;
  int rank = 0;
  double negativity = 0.0;
};

NegativeSpace negative_space(const BipartiteState& state) {
  const EigDecomp eig = eigh(partial_transpose(state.rho, state.cut, Side::A));
  NegativeSpace out;
  out.projector = spectral_projector_below(eig, kNegativeEigenvalueThreshold, &out.rank);
  for (int i = 0; i < out.rank; ++i) out.negativity -= eig.eigenvalues(i);
  return out;
}

}  // namespace

Witness negativity_witness(const BipartiteState& state) {
  const NegativeSpace neg = negative_space(state);
  if (neg.rank == 0) {
    throw InvalidArgument("negativity_witness: state has positive partial transpose");
  }
  return {partial_transpose(neg.projector, state.cut, Side::A), state.cut,
          WitnessFamily::negativity, "0 <= W^TA <= I", {}};
}

EntanglementResult negativity(const BipartiteState& state) {
  const NegativeSpace neg = negative_space(state);
  EntanglementResult out;
  out.n_minus = neg.rank;
  out.witness = {neg.rank > 0 ? partial_transpose(neg.projector, state.cut, Side::A)
                              : CMatrix(CMatrix::Zero(state.cut.d(), state.cut.d())),
                 state.cut, WitnessFamily::negativity, "0 <= W^TA <= I", {}};
  finalize_result(out, state);
  return out;
}

EntanglementResult random_robustness_decomposable(const BipartiteState& state) {
  const Eigenspace from_pt = lowest_eigenspace(partial_transpose(state.rho, state.cut, Side::A));
  const Eigenspace from_rho = lowest_eigenspace(state.rho);
  EntanglementResult out;
  CMatrix w;
  if (from_pt.eigenvalue <= from_rho.eigenvalue) {
    w = partial_transpose(from_pt.projector, state.cut, Side::A) / from_pt.multiplicity;
  } else {
    w = from_rho.projector / from_rho.multiplicity;
  }
  out.witness = {std::move(w), state.cut, WitnessFamily::random_robustness,
                 "Tr W = 1, W = P + Q^TA", {}};
  finalize_result(out, state);
  return out;
}

std::vector<ProductVector> sample_product_states(const Cut& cut, int count, std::uint64_t seed) {
  if (count < 0) throw InvalidArgument("sample_product_states: negative count");
  Rng rng(seed);
  std::vector<ProductVector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    CVector a = haar_vector(cut.dA, rng);
    CVector b = haar_vector(cut.dB, rng);
    out.push_back({std::move(a), std::move(b)});
  }
  return out;
}

namespace {

// <. b| W |. b> as a dA x dA matrix.
CMatrix contract_b(const CMatrix& w, const Cut& cut, const CVector& b) {
  CMatrix m(cut.dA, cut.dA);
  for (int i = 0; i < cut.dA; ++i)
    for (int k = 0; k < cut.dA; ++k)
      m(i, k) = b.dot(w.block(i * cut.dB, k * cut.dB, cut.dB, cut.dB) * b);
  return hermitian_part(m);
}

// <a .| W |a .> as a dB x dB matrix.
CMatrix contract_a(const CMatrix& w, const Cut& cut, const CVector& a) {
  CMatrix m = CMatrix::Zero(cut.dB, cut.dB);
  for (int i = 0; i < cut.dA; ++i)
    for (int k = 0; k < cut.dA; ++k)
      m += std::conj(a(i)) * a(k) * w.block(i * cut.dB, k * cut.dB, cut.dB, cut.dB);
  return hermitian_part(m);
}

std::pair<double, CVector> lowest_pair(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

}  // namespace

SeesawResult seesaw_min_product(const CMatrix& W, const Cut& cut, const SeesawConfig& config) {
  if (W.rows() != cut.d() || W.cols() != cut.d()) {
    throw InvalidArgument("seesaw_min_product: witness size does not match cut");
  }
  if (!is_hermitian(W)) throw InvalidArgument("seesaw_min_product: witness is not Hermitian");
  const CMatrix w = hermitian_part(W);
  const int restarts = std::max(1, config.restarts);
  std::vector<std::pair<double, ProductVector>> minima(restarts);

  parallel_for(static_cast<std::size_t>(restarts), config.workers, [&](std::size_t r) {
    Rng rng(derive_seed(config.seed, r));
    CVector b = haar_vector(cut.dB, rng);
    CVector a;
    double value = INFINITY;
    for (int it = 0; it < config.max_iterations; ++it) {
      a = lowest_pair(contract_b(w, cut, b)).second;
      auto [v, bn] = lowest_pair(contract_a(w, cut, a));
      b = std::move(bn);
      const bool stalled = value - v < config.stall;
      value = std::min(value, v);
      if (stalled) break;
    }
    minima[r] = {value, {std::move(a), std::move(b)}};
  });

  std::vector<std::size_t> order(restarts);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return minima[x].first < minima[y].first; });
  SeesawResult out;
  out.restarts = restarts;
  out.local_minima.reserve(restarts);
  for (std::size_t i : order) out.local_minima.push_back(std::move(minima[i]));
  out.value = out.local_minima.front().first;
  out.best = out.local_minima.front().second;
  return out;
}

SeesawResult seesaw_min_product(const Witness& w, const SeesawConfig& config) {
  return seesaw_min_product(w.W, w.cut, config);
}

namespace {

// (W + s I) / (1 + s d) with s = max(0, -margin): keeps Tr W = 1 and lifts the
// smallest product expectation found to zero.
CMatrix lift(const CMatrix& w, double margin) {
  const double s = std::max(0.0, -margin);
  const int d = static_cast<int>(w.rows());
  return (w + s * identity(d)) / (1.0 + s * d);
}

double lifted_margin(double margin, int d) {
  const double s = std::max(0.0, -margin);
  return (margin + s) / (1.0 + s * d);
}

bool nearly_parallel(const CVector& x, const CVector& y) {
  return std::norm(x.dot(y)) > 1.0 - 1e-8;
}

constexpr int kMaxExtensionDim = 48;

// Returns an empty witness when the extension is too large for either side.
EntanglementResult extension_master(const BipartiteState& state, const CuttingPlaneConfig& config) {
  const Cut& cut = state.cut;
  const int d = cut.d();

  // The solver factors a dense Gram matrix of size (d_X d_Y (d_Y + 1) / 2)^2
  // for a copy of Y; keep that below a few thousand rows.
  auto fits = [&](int dx, int dy) { return dx * dy * (dy + 1) / 2 <= kMaxExtensionDim; };
  std::vector<int> sides;
  if (fits(cut.dA, cut.dB)) sides.push_back(0);
  if ((config.extend_both_sides || sides.empty()) && cut.dA > 1 && cut.dB > 1 &&
      fits(cut.dB, cut.dA))
    sides.push_back(1);

  EntanglementResult best;
  best.value = -INFINITY;
  for (const int side : sides) {
    detail::ExtensionSdpResult sdp;
    if (side == 0) {
      sdp = detail::extension_witness_sdp(state.rho, cut, config.extension_max_iterations, config.extension_tolerance);
    } else {
      const Cut swapped(cut.dB, cut.dA);
      sdp = detail::extension_witness_sdp(swap_subsystems(state.rho, cut), swapped,
                                          config.extension_max_iterations, config.extension_tolerance);
      sdp.W = swap_subsystems(sdp.W, swapped);
    }
    SeesawConfig sc;
    sc.restarts = config.certification_restarts;
    sc.seed = derive_seed(config.seed, static_cast<std::uint64_t>(side));
    sc.workers = config.workers;
    const SeesawResult cert = seesaw_min_product(sdp.W, cut, sc);

    EntanglementResult out;
    out.witness = {lift(sdp.W, cert.value), cut, WitnessFamily::random_robustness, "Tr W = 1, symmetric extension",
                   {true, lifted_margin(cert.value, d), cert.restarts, sc.seed}};
    finalize_result(out, state);
    out.rounds = 1;
    out.iterations = sdp.iterations;
    out.solver_converged = sdp.converged;
    if (side == sides.front() || out.expectation < best.expectation) best = std::move(out);
  }
  return best;
}

}  // namespace

EntanglementResult random_robustness_cutting_plane(const BipartiteState& state,
                                                   const CuttingPlaneConfig& config) {
  if (config.master == MasterProblem::symmetric_extension) {
    EntanglementResult out = extension_master(state, config);
    if (out.witness.W.size() > 0) return out;
  }
  const Cut& cut = state.cut;
  const int d = cut.d();
  const int n = d * d;
  const RVector target = detail::herm_to_coords(state.rho);

  const int initial = config.initial_samples < 0 ? n : config.initial_samples;
  std::vector<RVector> rows;
  for (const auto& pv : sample_product_states(cut, initial, derive_seed(config.seed, 0))) {
    rows.push_back(detail::rank_one_coords(pv.ab()));
  }

  auto seesaw_cfg = [&](int restarts, std::uint64_t stream) {
    SeesawConfig sc;
    sc.restarts = restarts;
    sc.seed = derive_seed(config.seed, stream);
    sc.workers = config.workers;
    return sc;
  };

  CMatrix best_w = identity(d) / d;
  double best_value = -INFINITY;
  double relaxation = -INFINITY;
  int cuts_added = 0;
  int round = 0;
  bool capped = false;

  auto add_cuts = [&](const SeesawResult& sep) {
    std::vector<CVector> added;
    for (const auto& [v, pv] : sep.local_minima) {
      if (v >= -config.violation_tolerance) break;
      if (static_cast<int>(added.size()) >= config.cuts_per_round) break;
      CVector x = pv.ab();
      if (std::any_of(added.begin(), added.end(),
                      [&](const CVector& y) { return nearly_parallel(x, y); }))
        continue;
      rows.push_back(detail::rank_one_coords(x));
      added.push_back(std::move(x));
    }
    cuts_added += static_cast<int>(added.size());
  };

  while (true) {
    ++round;
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), n);
    for (std::size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows[i];
    const detail::BallLpResult master =
        detail::solve_ball_lp(target, a, d, config.radius, config.master_tolerance);
    relaxation = master.objective;
    const CMatrix w = detail::coords_to_herm(master.w, d);

    const SeesawResult sep =
        seesaw_min_product(w, cut, seesaw_cfg(config.separation_restarts, 1000 + round));
    const CMatrix lifted = lift(w, sep.value);
    const double certified = -trace_inner(lifted, state.rho).real();
    if (certified > best_value) {
      best_value = certified;
      best_w = lifted;
    }

    // The relaxation bounds the optimum from above; once it is nonpositive
    // or matches the certified value there is nothing left to find.
    // A master solve that stopped early says nothing about the optimum, so
    // it ends the search with whatever has been certified so far.
    const bool converged = master.converged &&
                           (-relaxation <= 0.0 || sep.value >= -config.violation_tolerance ||
                            -relaxation - best_value <= config.gap_tolerance);
    if (converged || !master.converged || cuts_added >= config.max_cuts) {
      capped = !converged;
      const SeesawResult cert = seesaw_min_product(
          best_w, cut, seesaw_cfg(config.certification_restarts, 2000000 + round));
      if (cert.value >= -config.violation_tolerance || capped) {
        EntanglementResult out;
        out.witness = {lift(best_w, cert.value), cut, WitnessFamily::random_robustness,
                       "Tr W = 1, |W|_2 <= " + std::to_string(config.radius), {}};
        out.witness.certificate = {true, lifted_margin(cert.value, d), cert.restarts,
                                   derive_seed(config.seed, 2000000 + round)};
        finalize_result(out, state);
        out.cuts = cuts_added;
        out.rounds = round;
        out.relaxation_value = -relaxation;
        out.hit_cut_cap = capped && master.converged;
        out.solver_converged = master.converged;
        return out;
      }
      add_cuts(cert);
      best_value = -INFINITY;
      continue;
    }
    add_cuts(sep);
  }
}

GeneralizedRobustnessResult generalized_robustness_ppt(const BipartiteState& state,
                                                       const GeneralizedRobustnessConfig& config) {
  const Cut& cut = state.cut;
  const int d = cut.d();
  const CMatrix eye = identity(d);
  auto project_ppt = [&](const CMatrix& x) {
    const CMatrix shifted = partial_transpose(CMatrix(x + state.rho), cut, Side::A);
    return CMatrix(partial_transpose(psd_project(hermitian_part(shifted)), cut, Side::A) -
                   state.rho);
  };

  // Scaled ADMM on  Tr Y + [Y >= 0] + [(rho + V)^TA >= 0],  Y = V.
  CMatrix y = CMatrix::Zero(d, d);
  CMatrix v = CMatrix::Zero(d, d);
  CMatrix u = CMatrix::Zero(d, d);
  double beta = 1.0;
  const double stop = config.tolerance / (10.0 * std::sqrt(static_cast<double>(d)));
  GeneralizedRobustnessResult out;
  for (int it = 1; it <= config.max_iterations; ++it) {
    y = psd_project(hermitian_part(v - u - eye / beta));
    const CMatrix v_prev = v;
    v = project_ppt(y + u);
    u += y - v;
    out.primal_residual = (y - v).norm();
    out.dual_residual = beta * (v - v_prev).norm();
    out.iterations = it;
    if (out.primal_residual <= stop && out.dual_residual <= stop) {
      out.value = v.trace().real();
      return out;
    }
    if (out.primal_residual > 10.0 * out.dual_residual) {
      beta *= 2.0;
      u /= 2.0;
    } else if (out.dual_residual > 10.0 * out.primal_residual) {
      beta /= 2.0;
      u *= 2.0;
    }
  }
  throw ConvergenceError("generalized_robustness_ppt: no convergence after " +
                             std::to_string(config.max_iterations) + " iterations (primal " +
                             std::to_string(out.primal_residual) + ", dual " +
                             std::to_string(out.dual_residual) + ")",
                         std::max(out.primal_residual, out.dual_residual));
}

}  // namespace qcorr
