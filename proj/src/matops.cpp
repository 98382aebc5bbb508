#include "qcorr/matops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qcorr {

Cut::Cut(int a, int b) : dA(a), dB(b) {
  if (a < 1 || b < 1) {
    throw InvalidArgument("cut dimensions must be positive, got " + std::to_string(a) + "x" +
                          std::to_string(b));
  }
}

namespace {

void require_square(const CMatrix& m, int d, const char* what) {
  if (m.rows() != d || m.cols() != d) {
    throw InvalidArgument(std::string(what) + ": expected " + std::to_string(d) + "x" +
                          std::to_string(d) + " matrix, got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
}

}  // namespace

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix partial_transpose(const CMatrix& rho, const Cut& cut, Side side) {
  require_square(rho, cut.d(), "partial_transpose");
  CMatrix out(cut.d(), cut.d());
  for (int i = 0; i < cut.dA; ++i) {
    for (int j = 0; j < cut.dB; ++j) {
      for (int k = 0; k < cut.dA; ++k) {
        for (int l = 0; l < cut.dB; ++l) {
          // <ij|out|kl>
          out(cut.index(i, j), cut.index(k, l)) = side == Side::A
                                                      ? rho(cut.index(k, j), cut.index(i, l))
                                                      : rho(cut.index(i, l), cut.index(k, j));
        }
      }
    }
  }
  return out;
}

CMatrix partial_trace(const CMatrix& rho, const Cut& cut, Side keep) {
  require_square(rho, cut.d(), "partial_trace");
  if (keep == Side::A) {
    CMatrix out = CMatrix::Zero(cut.dA, cut.dA);
    for (int i = 0; i < cut.dA; ++i)
      for (int k = 0; k < cut.dA; ++k)
        for (int j = 0; j < cut.dB; ++j) out(i, k) += rho(cut.index(i, j), cut.index(k, j));
    return out;
  }
  CMatrix out = CMatrix::Zero(cut.dB, cut.dB);
  for (int i = 0; i < cut.dA; ++i) out += rho.block(i * cut.dB, i * cut.dB, cut.dB, cut.dB);
  return out;
}

CMatrix swap_subsystems(const CMatrix& m, const Cut& cut) {
  require_square(m, cut.d(), "swap_subsystems");
  const Cut swapped(cut.dB, cut.dA);
  CMatrix out(cut.d(), cut.d());
  for (int i = 0; i < cut.dA; ++i)
    for (int j = 0; j < cut.dB; ++j)
      for (int k = 0; k < cut.dA; ++k)
        for (int l = 0; l < cut.dB; ++l)
          out(swapped.index(j, i), swapped.index(l, k)) = m(cut.index(i, j), cut.index(k, l));
  return out;
}

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return kInfNorm;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  // Frobenius norm stands in for the 2-norm scale.
  return hermiticity_defect(m) <= rel_tol * std::max(1.0, m.norm());
}

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

EigDecomp eigh(const CMatrix& m) {
  if (!is_hermitian(m)) {
    throw InvalidArgument("eigh: matrix is not Hermitian (defect " +
                          std::to_string(hermiticity_defect(m)) + ")");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigh: eigensolver failed", 0.0);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector eigvalsh(const CMatrix& m) {
  if (!is_hermitian(m)) throw InvalidArgument("eigvalsh: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

RVector singular_values(const CMatrix& m) {
  if (is_hermitian(m)) return eigvalsh(m).cwiseAbs();
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues();
}

double schatten(const CMatrix& m, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("schatten: p must be >= 1, got " + std::to_string(p));
  const RVector s = singular_values(m);
  if (s.size() == 0) return 0.0;
  const double smax = s.maxCoeff();
  if (std::isinf(p) || smax == 0.0) return smax;
  if (p == 1.0) return s.sum();
  if (p == 2.0) return s.norm();
  double acc = 0.0;
  for (double v : s) acc += std::pow(v / smax, p);
  return smax * std::pow(acc, 1.0 / p);
}

cplx trace_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("trace_inner: dimension mismatch");
  }
  // Tr(A B^dagger) = sum_ij A_ij conj(B_ij)
  return (a.array() * b.array().conjugate()).sum();
}

CMatrix psd_project(const CMatrix& m) {
  const EigDecomp e = eigh(m);
  const RVector clipped = e.eigenvalues.cwiseMax(0.0);
  return e.eigenvectors * clipped.asDiagonal() * e.eigenvectors.adjoint();
}

double entropy(const CMatrix& rho) {
  const RVector ev = eigvalsh(rho);
  double s = 0.0;
  for (double l : ev) {
    if (l < -1e-10) {
      throw InvalidArgument("entropy: negative eigenvalue " + std::to_string(l));
    }
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

Eigenspace lowest_eigenspace(const CMatrix& m, double gap) {
  const EigDecomp e = eigh(m);
  const double lo = e.eigenvalues(0);
  int mult = 1;
  while (mult < e.eigenvalues.size() && e.eigenvalues(mult) - lo < gap) ++mult;
  const auto v = e.eigenvectors.leftCols(mult);
  return {lo, mult, v * v.adjoint()};
}

CMatrix spectral_projector_below(const EigDecomp& eig, double threshold, int* rank) {
  int n = 0;
  while (n < eig.eigenvalues.size() && eig.eigenvalues(n) < threshold) ++n;
  if (rank) *rank = n;
  const auto v = eig.eigenvectors.leftCols(n);
  return v * v.adjoint();
}

CMatrix flip_operator(int d) {
  CMatrix f = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return f;
}

CMatrix identity(int d) { return CMatrix::Identity(d, d); }

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

}  // namespace qcorr
