#pragma once

// Slow, loop-based reference implementations. They share nothing with the
// library code except the matrix type.

#include <Eigen/Dense>
#include <complex>

namespace oracle {

using CM = Eigen::MatrixXcd;

inline CM kron(const CM& a, const CM& b) {
  CM out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// <i j| rho^TA |k l> = <k j| rho |i l>
inline CM transpose_a(const CM& rho, int dA, int dB) {
  CM out(rho.rows(), rho.cols());
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dB; ++j)
      for (int k = 0; k < dA; ++k)
        for (int l = 0; l < dB; ++l) out(i * dB + j, k * dB + l) = rho(k * dB + j, i * dB + l);
  return out;
}

inline CM transpose_b(const CM& rho, int dA, int dB) {
  CM out(rho.rows(), rho.cols());
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dB; ++j)
      for (int k = 0; k < dA; ++k)
        for (int l = 0; l < dB; ++l) out(i * dB + j, k * dB + l) = rho(i * dB + l, k * dB + j);
  return out;
}

inline CM trace_b(const CM& rho, int dA, int dB) {
  CM out = CM::Zero(dA, dA);
  for (int i = 0; i < dA; ++i)
    for (int k = 0; k < dA; ++k)
      for (int j = 0; j < dB; ++j) out(i, k) += rho(i * dB + j, k * dB + j);
  return out;
}

inline CM trace_a(const CM& rho, int dA, int dB) {
  CM out = CM::Zero(dB, dB);
  for (int j = 0; j < dB; ++j)
    for (int l = 0; l < dB; ++l)
      for (int i = 0; i < dA; ++i) out(j, l) += rho(i * dB + j, i * dB + l);
  return out;
}

// Singular values through the eigenvalues of M^dagger M.
inline double schatten(const CM& m, double p) {
  Eigen::SelfAdjointEigenSolver<CM> es(m.adjoint() * m);
  double acc = 0.0, mx = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double s = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    mx = std::max(mx, s);
    acc += std::pow(s, p);
  }
  return std::isinf(p) ? mx : std::pow(acc, 1.0 / p);
}

// Dephasing of B in the columns of u: sum_j (I x P_j) rho (I x P_j).
inline CM dephase_b(const CM& rho, int dA, const CM& u) {
  const int dB = static_cast<int>(u.rows());
  CM out = CM::Zero(rho.rows(), rho.cols());
  for (int j = 0; j < dB; ++j) {
    const CM p = kron(CM::Identity(dA, dA), u.col(j) * u.col(j).adjoint());
    out += p * rho * p;
  }
  return out;
}

// Qubit unitary whose first column is the Bloch vector (theta, phi).
inline CM qubit_basis(double theta, double phi) {
  using c = std::complex<double>;
  CM u(2, 2);
  u << std::cos(theta / 2), -std::exp(c(0, -phi)) * std::sin(theta / 2),
      std::exp(c(0, phi)) * std::sin(theta / 2), std::cos(theta / 2);
  return u;
}

}  // namespace oracle
