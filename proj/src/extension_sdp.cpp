#include "extension_sdp.hpp"

#include <cmath>

#include "master_solver.hpp"

namespace qcorr::detail {

namespace {

struct Vars {
  CMatrix w, p, q1, q2;

  Vars& operator+=(const Vars& o) {
    w += o.w;
    p += o.p;
    q1 += o.q1;
    q2 += o.q2;
    return *this;
  }
  Vars operator-(const Vars& o) const { return {w - o.w, p - o.p, q1 - o.q1, q2 - o.q2}; }
  Vars operator*(double s) const { return {w * s, p * s, q1 * s, q2 * s}; }
  double norm() const {
    return std::sqrt(w.squaredNorm() + p.squaredNorm() + q1.squaredNorm() + q2.squaredNorm());
  }
};

class ExtensionMap {
 public:
  explicit ExtensionMap(const Cut& cut)
      : cut_(cut),
        dB_(cut.dB),
        big_(cut.dA * cut.dB * cut.dB),
        ta_(cut.dA, cut.dB * cut.dB),
        tb_(cut.d(), cut.dB) {
    const int sym = dB_ * (dB_ + 1) / 2;
    v_ = CMatrix::Zero(big_, cut.dA * sym);
    const double h = 1.0 / std::sqrt(2.0);
    int col = 0;
    for (int a = 0; a < cut.dA; ++a) {
      for (int j = 0; j < dB_; ++j) {
        for (int k = j; k < dB_; ++k) {
          const int jk = (a * dB_ + j) * dB_ + k;
          const int kj = (a * dB_ + k) * dB_ + j;
          if (j == k) {
            v_(jk, col) = 1.0;
          } else {
            v_(jk, col) = h;
            v_(kj, col) = h;
          }
          ++col;
        }
      }
    }
  }

  int small_dim() const { return static_cast<int>(v_.cols()); }
  int big_dim() const { return big_; }

  // Returns the Ds x Ds residual block; the trace row is handled separately.
  CMatrix apply(const Vars& x) const {
    const CMatrix lifted = tensor(x.w, identity(dB_)) -
                           partial_transpose(x.q1, ta_, Side::A) -
                           partial_transpose(x.q2, tb_, Side::B);
    return v_.adjoint() * lifted * v_ - x.p;
  }

  Vars adjoint(const CMatrix& y, double tau) const {
    const CMatrix big = v_ * y * v_.adjoint();
    return {partial_trace(big, tb_, Side::A) + tau * identity(cut_.d()), -y,
            -partial_transpose(big, ta_, Side::A), -partial_transpose(big, tb_, Side::B)};
  }

 private:
  Cut cut_;
  int dB_;
  int big_;
  Cut ta_;  // A | B B'
  Cut tb_;  // A B | B'
  CMatrix v_;
};

}  // namespace

ExtensionSdpResult extension_witness_sdp(const CMatrix& rho, const Cut& cut, int max_iterations,
                                         double tolerance) {
  const ExtensionMap map(cut);
  const int d = cut.d();
  const int ds = map.small_dim();
  const int db = map.big_dim();
  const int ny = ds * ds;

  // Gram matrix of the constraint operator in orthonormal coordinates.
  Eigen::MatrixXd gram(ny + 1, ny + 1);
  for (int k = 0; k <= ny; ++k) {
    RVector e = RVector::Zero(ny);
    double tau = 0.0;
    if (k < ny) {
      e(k) = 1.0;
    } else {
      tau = 1.0;
    }
    const Vars at = map.adjoint(coords_to_herm(e, ds), tau);
    gram.col(k).head(ny) = herm_to_coords(map.apply(at));
    gram(ny, k) = at.w.trace().real();
  }
  const Eigen::LLT<Eigen::MatrixXd> gram_llt(0.5 * (gram + gram.transpose()));

  auto project_affine = [&](const Vars& v) {
    RVector r(ny + 1);
    r.head(ny) = herm_to_coords(map.apply(v));
    r(ny) = v.w.trace().real() - 1.0;
    const RVector lambda = gram_llt.solve(r);
    return v - map.adjoint(coords_to_herm(lambda.head(ny), ds), lambda(ny));
  };

  const Vars c{rho, CMatrix::Zero(ds, ds), CMatrix::Zero(db, db), CMatrix::Zero(db, db)};
  Vars z{identity(d) / d, CMatrix::Zero(ds, ds), CMatrix::Zero(db, db), CMatrix::Zero(db, db)};
  Vars u = c * 0.0;
  Vars x = z;
  double sigma = 1.0;

  ExtensionSdpResult out;
  for (int it = 1; it <= max_iterations; ++it) {
    x = project_affine(z - u - c * (1.0 / sigma));
    const Vars z_prev = z;
    z = x;
    z += u;
    z.p = psd_project(hermitian_part(z.p));
    z.q1 = psd_project(hermitian_part(z.q1));
    z.q2 = psd_project(hermitian_part(z.q2));
    u += x - z;

    out.primal_residual = (x - z).norm();
    out.dual_residual = sigma * (z - z_prev).norm();
    out.iterations = it;
    if (out.primal_residual <= tolerance && out.dual_residual <= tolerance) {
      out.converged = true;
      break;
    }
    if (it % 10 == 0) {
      if (out.primal_residual > 10.0 * out.dual_residual) {
        sigma *= 2.0;
        u = u * 0.5;
      } else if (out.dual_residual > 10.0 * out.primal_residual) {
        sigma *= 0.5;
        u = u * 2.0;
      }
    }
  }
  out.W = hermitian_part(x.w);
  out.objective = trace_inner(out.W, rho).real();
  return out;
}

}  // namespace qcorr::detail
