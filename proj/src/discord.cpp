#include "qcorr/discord.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "qcorr/parallel.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// I (x) U for side B, U (x) I for side A.
CMatrix local_unitary(const Cut& cut, Side side, const CMatrix& u) {
  return side == Side::B ? tensor(identity(cut.dA), u) : tensor(u, identity(cut.dB));
}

// Zeroes the entries of m (written in the measured basis of factor B) that
// connect different outcomes.
void zero_off_outcome(CMatrix& m, int outcomes) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (r % outcomes != c % outcomes) m(r, c) = 0.0;
}

CMatrix expm_skew(const CMatrix& z) {
  // z = iH with H Hermitian.
  const CMatrix h = hermitian_part(CMatrix(cplx(0.0, -1.0) * z));
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const CVector phases =
      es.eigenvalues().unaryExpr([](double l) { return std::polar(1.0, l); }).cast<cplx>();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Orthonormal basis of skew-Hermitian matrices under Re Tr(A^dagger B).
std::vector<CMatrix> skew_basis(int dim) {
  std::vector<CMatrix> out;
  const double h = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < dim; ++k) {
    CMatrix e = CMatrix::Zero(dim, dim);
    e(k, k) = cplx(0.0, 1.0);
    out.push_back(e);
  }
  for (int k = 0; k < dim; ++k) {
    for (int l = k + 1; l < dim; ++l) {
      CMatrix re = CMatrix::Zero(dim, dim);
      re(k, l) = h;
      re(l, k) = -h;
      out.push_back(re);
      CMatrix im = CMatrix::Zero(dim, dim);
      im(k, l) = cplx(0.0, h);
      im(l, k) = cplx(0.0, h);
      out.push_back(im);
    }
  }
  return out;
}

CMatrix fd_gradient(const std::function<double(const CMatrix&)>& f, const CMatrix& u) {
  constexpr double h = 1e-6;
  CMatrix g = CMatrix::Zero(u.rows(), u.cols());
  for (const CMatrix& e : skew_basis(static_cast<int>(u.rows()))) {
    const double up = f(expm_skew(h * e) * u);
    const double down = f(expm_skew(-h * e) * u);
    g += ((up - down) / (2.0 * h)) * e;
  }
  return g;
}

struct DescentState {
  CMatrix u;
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

void descend(const BasisObjective& obj, const OptimizerConfig& config, DescentState& s) {
  s.value = obj.value(s.u);
  double step = 1.0;
  for (int it = 0; it < config.max_iterations; ++it) {
    const CMatrix g = obj.gradient ? obj.gradient(s.u) : fd_gradient(obj.value, s.u);
    const double g2 = g.squaredNorm();
    if (g2 < 1e-24) {
      s.residual = 0.0;
      return;
    }
    double t = step;
    CMatrix next;
    double f_next = s.value;
    bool accepted = false, first_trial = true;
    while (t > 1e-14) {
      next = expm_skew(-t * g) * s.u;
      f_next = obj.value(next);
      if (f_next <= s.value - 1e-4 * t * g2) {
        accepted = true;
        break;
      }
      t *= 0.5;
      first_trial = false;
    }
    if (!accepted) return;
    // An accepted step can still overshoot the line minimum; without this
    // the step settles into a slow two-cycle around it.
    bool shrunk = false;
    while (t > 1e-14) {
      CMatrix half = expm_skew(-0.5 * t * g) * s.u;
      const double f_half = obj.value(half);
      if (!(f_half < f_next)) break;
      next = std::move(half);
      f_next = f_half;
      t *= 0.5;
      shrunk = true;
    }
    s.residual = s.value - f_next;
    s.u = std::move(next);
    s.value = f_next;
    ++s.iterations;
    step = first_trial && !shrunk ? 2.0 * t : t;
    if (s.residual <= config.tolerance * std::max(1.0, std::abs(s.value))) return;
  }
}

CMatrix random_givens(int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<double> angles(static_cast<std::size_t>(dim * (dim - 1)));
  std::vector<double> phases(static_cast<std::size_t>(dim));
  for (double& a : angles) a = angle(rng);
  for (double& p : phases) p = angle(rng);
  return givens_unitary(dim, angles, phases);
}

// Spectral function applied to rho - xi: |x|^p, or sqrt(x^2 + mu^2) when
// smoothing the trace norm.
struct Spectral {
  double p = 2.0;
  double mu = 0.0;

  double value(double x) const {
    return mu > 0.0 ? std::sqrt(x * x + mu * mu) : std::pow(std::abs(x), p);
  }
  double derivative(double x) const {
    if (mu > 0.0) return x / std::sqrt(x * x + mu * mu);
    if (x == 0.0) return 0.0;
    const double s = x > 0.0 ? 1.0 : -1.0;
    return p == 1.0 ? s : p * s * std::pow(std::abs(x), p - 1.0);
  }
};

// Dephasing objective for measurements on factor B of (rho, cut).
class DephasingObjective {
 public:
  DephasingObjective(const CMatrix& rho, const Cut& cut, Spectral spectral)
      : rho_(rho), cut_(cut), spectral_(spectral) {}

  double value(const CMatrix& u) const {
    const CMatrix x = residual(rotate(u));
    if (frobenius()) return x.squaredNorm();
    double f = 0.0;
    for (const double l : eigvalsh(x)) f += spectral_.value(l);
    return f;
  }

  // With rho' = (I (x) U)^dagger rho (I (x) U) and G' the derivative of the
  // spectral sum at rho' - xi', the gradient is U (S - S^dagger) U^dagger
  // where S(j, b) = sum_{a,c} rho'(aj, cj) G'(cj, ab) + G'(aj, cj) rho'(cj, ab).
  CMatrix gradient(const CMatrix& u) const {
    const CMatrix r = rotate(u);
    CMatrix g = residual(r);
    if (frobenius()) {
      g *= 2.0;
    } else {
      const EigDecomp eig = eigh(g);
      RVector dphi(eig.eigenvalues.size());
      for (Eigen::Index k = 0; k < dphi.size(); ++k)
        dphi(k) = spectral_.derivative(eig.eigenvalues(k));
      g = eig.eigenvectors * dphi.asDiagonal() * eig.eigenvectors.adjoint();
    }
    const int m = cut_.dB;
    CMatrix s = CMatrix::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      for (int b = 0; b < m; ++b) {
        cplx acc = 0.0;
        for (int a = 0; a < cut_.dA; ++a) {
          for (int c = 0; c < cut_.dA; ++c) {
            const int aj = cut_.index(a, j), cj = cut_.index(c, j), ab = cut_.index(a, b);
            acc += r(aj, cj) * g(cj, ab) + g(aj, cj) * r(cj, ab);
          }
        }
        s(j, b) = acc;
      }
    }
    return u * CMatrix(s - s.adjoint()) * u.adjoint();
  }

  // (I (x) U)^dagger rho (I (x) U), one d_B x d_B block at a time.
  CMatrix rotate(const CMatrix& u) const {
    const int m = cut_.dB;
    CMatrix r(cut_.d(), cut_.d());
    for (int a = 0; a < cut_.dA; ++a)
      for (int c = 0; c < cut_.dA; ++c)
        r.block(a * m, c * m, m, m).noalias() = u.adjoint() * rho_.block(a * m, c * m, m, m) * u;
    return r;
  }

  bool frobenius() const { return spectral_.p == 2.0 && spectral_.mu == 0.0; }

  CMatrix residual(const CMatrix& rotated) const {
    CMatrix xi = rotated;
    zero_off_outcome(xi, cut_.dB);
    return hermitian_part(CMatrix(rotated - xi));
  }

 private:
  CMatrix rho_;
  Cut cut_;
  Spectral spectral_;
};

// The measured factor is always B internally; side A swaps the factors.
struct Oriented {
  CMatrix rho;
  Cut cut;
};

Oriented orient(const BipartiteState& state, Side side) {
  if (side == Side::B) return {state.rho, state.cut};
  return {swap_subsystems(state.rho, state.cut), Cut(state.cut.dB, state.cut.dA)};
}

// Euclidean projection of a vector onto the probability simplex.
RVector project_simplex(const RVector& v) {
  std::vector<double> s(v.data(), v.data() + v.size());
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    cum += s[k];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (s[k] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0);
}

// Projected subgradient on the blocks sigma_j of xi' = sum_j sigma_j (x) |j><j|
// for fixed basis, in the rotated frame. Returns the best xi' found.
CMatrix refine_trace_norm(const CMatrix& rotated, const Cut& cut, int iterations, double* best) {
  const int n = cut.dA, m = cut.dB;
  std::vector<CMatrix> sigma(m, CMatrix::Zero(n, n));
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) sigma[j](a, c) = rotated(cut.index(a, j), cut.index(c, j));

  auto embed = [&](const std::vector<CMatrix>& blocks) {
    CMatrix xi = CMatrix::Zero(cut.d(), cut.d());
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) xi(cut.index(a, j), cut.index(c, j)) = blocks[j](a, c);
    return xi;
  };

  CMatrix best_xi = embed(sigma);
  *best = schatten(hermitian_part(CMatrix(rotated - best_xi)), 1.0);
  for (int k = 0; k < iterations; ++k) {
    const EigDecomp eig = eigh(hermitian_part(CMatrix(rotated - embed(sigma))));
    const RVector sign = eig.eigenvalues.unaryExpr([](double l) {
      return l > 0.0 ? 1.0 : (l < 0.0 ? -1.0 : 0.0);
    });
    const CMatrix s = eig.eigenvectors * sign.asDiagonal() * eig.eigenvectors.adjoint();
    const double step = 0.05 / std::sqrt(k + 1.0);

    std::vector<EigDecomp> parts(m);
    RVector all(n * m);
    for (int j = 0; j < m; ++j) {
      CMatrix blk(n, n);
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) blk(a, c) = s(cut.index(a, j), cut.index(c, j));
      parts[j] = eigh(hermitian_part(CMatrix(sigma[j] + step * blk)));
      all.segment(j * n, n) = parts[j].eigenvalues;
    }
    const RVector proj = project_simplex(all);
    for (int j = 0; j < m; ++j) {
      const RVector lam = proj.segment(j * n, n);
      sigma[j] = parts[j].eigenvectors * lam.cast<cplx>().asDiagonal() *
                 parts[j].eigenvectors.adjoint();
    }
    const CMatrix xi = embed(sigma);
    const double f = schatten(hermitian_part(CMatrix(rotated - xi)), 1.0);
    if (f < *best) {
      *best = f;
      best_xi = xi;
    }
  }
  return best_xi;
}

DiscordResult finish(const BipartiteState& state, Side side, double p, const BasisOptimum& opt,
                     const OptimizerConfig& config) {
  DiscordResult out;
  out.p = p;
  out.basis = {side, opt.unitary};
  const BipartiteState xi = dephase(state, out.basis);
  out.classical_state = xi;
  out.value = std::pow(schatten(CMatrix(state.rho - xi.rho), p), p);
  out.dephased_value = out.value;
  out.refined_value = out.value;
  out.restarts = config.restarts;
  out.iterations = opt.iterations;
  out.residual = opt.residual;
  return out;
}

BasisObjective wrap(const Oriented& o, Spectral spectral) {
  auto obj = std::make_shared<const DephasingObjective>(o.rho, o.cut, spectral);
  return {[obj](const CMatrix& u) { return obj->value(u); },
          [obj](const CMatrix& u) { return obj->gradient(u); }};
}

BasisOptimum optimize(const Oriented& o, const std::vector<Spectral>& spectra,
                      const OptimizerConfig& config) {
  std::vector<BasisObjective> stages;
  for (const Spectral& s : spectra) stages.push_back(wrap(o, s));
  return basis_optimizer(stages, o.cut.dB, config);
}

}  // namespace

MeasurementBasis computational_basis(const Cut& cut, Side side) {
  return {side, identity(cut.dim(side))};
}

BipartiteState dephase(const BipartiteState& state, const MeasurementBasis& basis) {
  const int m = state.cut.dim(basis.side);
  if (basis.vectors.rows() != m || basis.vectors.cols() != m) {
    throw InvalidArgument("dephase: basis must be " + std::to_string(m) + "x" +
                          std::to_string(m));
  }
  if ((basis.vectors.adjoint() * basis.vectors - identity(m)).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidArgument("dephase: basis is not orthonormal");
  }
  const Oriented o = orient(state, basis.side);
  const CMatrix k = local_unitary(o.cut, Side::B, basis.vectors);
  CMatrix xi = k.adjoint() * o.rho * k;
  zero_off_outcome(xi, o.cut.dB);
  xi = hermitian_part(CMatrix(k * xi * k.adjoint()));
  if (basis.side == Side::A) xi = swap_subsystems(xi, o.cut);
  return make_state(std::move(xi), state.cut, state.label + " dephased on " + to_string(basis.side));
}

BasisObjective dephasing_objective(const BipartiteState& state, double p, Side side,
                                  double smoothing) {
  if (!(p >= 1.0)) throw InvalidArgument("dephasing_objective: p must be >= 1");
  return wrap(orient(state, side), Spectral{p, smoothing});
}

double dephasing_distance(const BipartiteState& state, const MeasurementBasis& basis, double p) {
  return std::pow(schatten(CMatrix(state.rho - dephase(state, basis).rho), p), p);
}

CMatrix givens_unitary(int dim, const std::vector<double>& angles,
                       const std::vector<double>& phases) {
  if (static_cast<int>(angles.size()) != dim * (dim - 1) ||
      static_cast<int>(phases.size()) != dim) {
    throw InvalidArgument("givens_unitary: expected d(d-1) angles and d phases");
  }
  CMatrix u = identity(dim);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const double theta = angles[k++];
      const double phi = angles[k++];
      const cplx c = std::cos(theta);
      const cplx s = std::sin(theta);
      // Right-multiply by the rotation acting on columns i and j.
      const CVector ci = u.col(i), cj = u.col(j);
      u.col(i) = c * ci + std::polar(1.0, phi) * s * cj;
      u.col(j) = -std::polar(1.0, -phi) * s * ci + c * cj;
    }
  }
  for (int i = 0; i < dim; ++i) u.row(i) *= std::polar(1.0, phases[i]);
  return u;
}

BasisOptimum basis_optimizer(const std::vector<BasisObjective>& stages, int dim,
                             const OptimizerConfig& config) {
  if (stages.empty()) throw InvalidArgument("basis_optimizer: no objective");
  if (config.restarts < 1) throw InvalidArgument("basis_optimizer: restarts must be >= 1");
  std::vector<DescentState> runs(static_cast<std::size_t>(config.restarts));
  parallel_for(runs.size(), config.workers, [&](std::size_t i) {
    DescentState& s = runs[i];
    s.u = i == 0 ? identity(dim) : random_givens(dim, derive_seed(config.seed, i));
    for (const BasisObjective& stage : stages) descend(stage, config, s);
    s.value = stages.back().value(s.u);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value < runs[best].value) best = i;
  return {runs[best].u, runs[best].value, static_cast<int>(best), runs[best].iterations,
          runs[best].residual};
}

BasisOptimum basis_optimizer(const BasisObjective& objective, int dim,
                             const OptimizerConfig& config) {
  return basis_optimizer(std::vector<BasisObjective>{objective}, dim, config);
}

DiscordResult d2_discord(const BipartiteState& state, Side side, const DiscordConfig& config) {
  const Oriented o = orient(state, side);
  const BasisOptimum opt = optimize(o, {Spectral{2.0, 0.0}}, config.optimizer);
  return finish(state, side, 2.0, opt, config.optimizer);
}

DiscordResult d1_discord(const BipartiteState& state, Side side, const DiscordConfig& config) {
  const Oriented o = orient(state, side);
  std::vector<Spectral> spectra;
  for (const double mu : config.smoothing) spectra.push_back({1.0, mu});
  spectra.push_back({1.0, 0.0});
  const BasisOptimum opt = optimize(o, spectra, config.optimizer);
  DiscordResult out = finish(state, side, 1.0, opt, config.optimizer);
  if (!config.refine_inner || out.value <= 1e-12) return out;

  const CMatrix k = local_unitary(o.cut, Side::B, opt.unitary);
  const CMatrix rotated = hermitian_part(CMatrix(k.adjoint() * o.rho * k));
  double refined = 0.0;
  const CMatrix xi_rot = refine_trace_norm(rotated, o.cut, config.refine_iterations, &refined);
  if (refined < out.dephased_value - 1e-9) {
    CMatrix xi = hermitian_part(CMatrix(k * xi_rot * k.adjoint()));
    if (side == Side::A) xi = swap_subsystems(xi, o.cut);
    out.classical_state = make_state(std::move(xi), state.cut, state.label + " refined on " +
                                                                    to_string(side));
    out.value = schatten(CMatrix(state.rho - out.classical_state.rho), 1.0);
    out.refined_value = out.value;
    out.inner_mode = "refined";
  }
  return out;
}

DiscordResult dp_discord(const BipartiteState& state, double p, Side side,
                         const DiscordConfig& config) {
  if (!(p >= 1.0)) throw InvalidArgument("dp_discord: p must be >= 1");
  if (p == 1.0) return d1_discord(state, side, config);
  if (p == 2.0) return d2_discord(state, side, config);
  const Oriented o = orient(state, side);
  const BasisOptimum opt = optimize(o, {Spectral{p, 0.0}}, config.optimizer);
  return finish(state, side, p, opt, config.optimizer);
}

double mutual_information(const BipartiteState& state) {
  return entropy(partial_trace(state.rho, state.cut, Side::A)) +
         entropy(partial_trace(state.rho, state.cut, Side::B)) - entropy(state.rho);
}

}  // namespace qcorr
