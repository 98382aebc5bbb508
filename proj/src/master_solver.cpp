#include "master_solver.hpp"

#include <cmath>

namespace qcorr::detail {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

}  // namespace

RVector herm_to_coords(const CMatrix& h) {
  const int d = static_cast<int>(h.rows());
  RVector c(d * d);
  int k = 0;
  for (int i = 0; i < d; ++i) c(k++) = h(i, i).real();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      c(k++) = kSqrt2 * h(i, j).real();
      c(k++) = kSqrt2 * h(i, j).imag();
    }
  }
  return c;
}

CMatrix coords_to_herm(const RVector& c, int d) {
  CMatrix h(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) h(i, i) = c(k++);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const cplx v(c(k) / kSqrt2, c(k + 1) / kSqrt2);
      k += 2;
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

RVector rank_one_coords(const CVector& x) {
  const int d = static_cast<int>(x.size());
  RVector c(d * d);
  int k = 0;
  for (int i = 0; i < d; ++i) c(k++) = std::norm(x(i));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const cplx v = x(i) * std::conj(x(j));
      c(k++) = kSqrt2 * v.real();
      c(k++) = kSqrt2 * v.imag();
    }
  }
  return c;
}

namespace {

struct Barrier {
  const RVector& c;
  const Eigen::MatrixXd& a;
  double r2;

  // Returns +inf outside the domain.
  double value(const RVector& w, double t) const {
    const double q = r2 - w.squaredNorm();
    if (!(q > 0.0)) return INFINITY;
    double v = t * c.dot(w) - std::log(q);
    if (a.rows() > 0) {
      const RVector s = a * w;
      if (!(s.minCoeff() > 0.0)) return INFINITY;
      v -= s.array().log().sum();
    }
    return v;
  }
};

}  // namespace

BallLpResult solve_ball_lp(const RVector& c, const Eigen::MatrixXd& cuts, int d, double radius,
                           double tolerance) {
  const Eigen::Index n = c.size();
  RVector e = RVector::Zero(n);
  e.head(d).setOnes();

  const double r2 = radius * radius;
  const Barrier barrier{c, cuts, r2};
  const double terms = static_cast<double>(cuts.rows() + 1);

  BallLpResult out;
  RVector w = e / d;
  double t = 1.0;
  const double mu = 4.0;

  Eigen::MatrixXd h(n, n);
  Eigen::MatrixXd scaled;
  while (true) {
    for (int step = 0; step < 200; ++step) {
      const double q = r2 - w.squaredNorm();
      RVector g = t * c + (2.0 / q) * w;
      // The ball barrier contributes (2/q) I + (4/q^2) w w^T; the rank-one
      // part is applied by Sherman-Morrison since it dominates near |w| = R.
      h.setZero();
      h.diagonal().setConstant(2.0 / q);
      if (cuts.rows() > 0) {
        const RVector inv_s = (cuts * w).cwiseInverse();
        g.noalias() -= cuts.transpose() * inv_s;
        scaled = inv_s.asDiagonal() * cuts;
        h.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
      }
      const Eigen::LLT<Eigen::MatrixXd> llt(h.selfadjointView<Eigen::Lower>());
      const double gamma = 4.0 / (q * q);
      const RVector hw = llt.solve(w);
      const double denom = 1.0 + gamma * w.dot(hw);
      auto solve = [&](const RVector& x) {
        RVector y = llt.solve(x);
        y -= (gamma * w.dot(y) / denom) * hw;
        return y;
      };
      const RVector u1 = solve(-g);
      const RVector u2 = solve(e);
      const RVector delta = u1 - (e.dot(u1) / e.dot(u2)) * u2;
      const double decrement = -g.dot(delta);
      ++out.newton_steps;
      if (!(decrement > 2e-12)) break;

      // Largest step keeping the iterate inside the domain.
      double alpha_max = 1.0 / 0.99;
      if (cuts.rows() > 0) {
        const RVector s = cuts * w;
        const RVector ds = cuts * delta;
        for (Eigen::Index m = 0; m < s.size(); ++m)
          if (ds(m) < 0.0) alpha_max = std::min(alpha_max, -s(m) / ds(m));
      }
      {
        // |w + a delta|^2 = r2  ->  smallest positive root
        const double qa = delta.squaredNorm();
        const double qb = 2.0 * w.dot(delta);
        const double qc = w.squaredNorm() - r2;
        const double root = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
        alpha_max = std::min(alpha_max, root);
      }
      double alpha = std::min(1.0, 0.99 * alpha_max);
      const double f0 = barrier.value(w, t);
      const double slope = g.dot(delta);
      while (alpha > 1e-16 && barrier.value(w + alpha * delta, t) > f0 + 0.25 * alpha * slope) {
        alpha *= 0.5;
      }
      if (alpha <= 1e-16) break;
      w += alpha * delta;
      if (decrement < 1e-14) break;
    }
    out.gap = terms / t;
    if (out.gap <= tolerance) break;
    t *= mu;
    if (t > 1e16) break;
  }
  out.w = w;
  out.objective = c.dot(w);
  out.converged = out.gap <= tolerance;
  return out;
}

}  // namespace qcorr::detail
