#pragma once

#include <complex>
#include <cstddef>
#include <limits>

#include <Eigen/Dense>

#include "qcorr/errors.hpp"

namespace qcorr {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

enum class Side { A, B };

inline const char* to_string(Side s) { return s == Side::A ? "A" : "B"; }

// Bipartite factorization d = d_A * d_B. Basis ket |i>|j> has flat index
// i * d_B + j everywhere in this library.
struct Cut {
  int dA = 1;
  int dB = 1;

  Cut() = default;
  Cut(int a, int b);

  int d() const { return dA * dB; }
  int dim(Side s) const { return s == Side::A ? dA : dB; }
  int index(int i, int j) const { return i * dB + j; }

  bool operator==(const Cut&) const = default;
};

struct EigDecomp {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // columns, matching eigenvalue order
};

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);

CMatrix partial_transpose(const CMatrix& rho, const Cut& cut, Side side = Side::A);
CMatrix partial_trace(const CMatrix& rho, const Cut& cut, Side keep);

// The same operator written on B (x) A.
CMatrix swap_subsystems(const CMatrix& m, const Cut& cut);

// Largest absolute entry of M - M^dagger.
double hermiticity_defect(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double rel_tol = 1e-12);
CMatrix hermitian_part(const CMatrix& m);

// Throws InvalidArgument when m fails the Hermitian check.
EigDecomp eigh(const CMatrix& m);
RVector eigvalsh(const CMatrix& m);

RVector singular_values(const CMatrix& m);

// Schatten p-norm, p >= 1 or kInfNorm.
double schatten(const CMatrix& m, double p);

// Tr(A B^dagger).
cplx trace_inner(const CMatrix& a, const CMatrix& b);

CMatrix psd_project(const CMatrix& m);

// von Neumann entropy in bits.
double entropy(const CMatrix& rho);

// Orthogonal projector onto the eigenspace of the smallest eigenvalue of a
// Hermitian matrix; eigenvalues within `gap` of the minimum are grouped.
struct Eigenspace {
  double eigenvalue = 0.0;
  int multiplicity = 0;
  CMatrix projector;
};
Eigenspace lowest_eigenspace(const CMatrix& m, double gap = 1e-8);

// Projector onto the span of eigenvectors whose eigenvalue is < threshold.
CMatrix spectral_projector_below(const EigDecomp& eig, double threshold, int* rank = nullptr);

CMatrix flip_operator(int d);
CMatrix identity(int d);
CMatrix projector(const CVector& v);

}  // namespace qcorr
