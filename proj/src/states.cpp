#include "qcorr/states.hpp"

#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

std::string fmt_num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

CVector ket(int dim, int i) {
  CVector v = CVector::Zero(dim);
  v(i) = 1.0;
  return v;
}

void require_orthonormal(const CMatrix& basis, int dim, const char* what) {
  if (basis.rows() != dim || basis.cols() != dim) {
    throw InvalidArgument(std::string(what) + ": basis must be " + std::to_string(dim) + "x" +
                          std::to_string(dim));
  }
  const double defect = (basis.adjoint() * basis - identity(dim)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw InvalidArgument(std::string(what) + ": basis is not orthonormal");
}

}  // namespace

void validate_state(const CMatrix& rho, const Cut& cut) {
  if (rho.rows() != cut.d() || rho.cols() != cut.d()) {
    throw InvalidArgument("state: matrix size does not match cut " + std::to_string(cut.dA) +
                          "x" + std::to_string(cut.dB));
  }
  if (!is_hermitian(rho)) throw InvalidArgument("state: matrix is not Hermitian");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-12) {
    throw InvalidArgument("state: trace is " + fmt_num(tr) + ", expected 1");
  }
  const double lmin = eigvalsh(rho)(0);
  if (lmin < -1e-10) {
    throw InvalidArgument("state: negative eigenvalue " + fmt_num(lmin));
  }
}

BipartiteState make_state(CMatrix rho, Cut cut, std::string label) {
  validate_state(rho, cut);
  return {hermitian_part(rho), cut, std::move(label)};
}

BipartiteState max_entangled(int dA) {
  if (dA < 1) throw InvalidArgument("max_entangled: dimension must be positive");
  const Cut cut(dA, dA);
  CVector phi = CVector::Zero(cut.d());
  for (int i = 0; i < dA; ++i) phi(cut.index(i, i)) = 1.0;
  phi /= std::sqrt(static_cast<double>(dA));
  return make_state(projector(phi), cut, "max_entangled(" + std::to_string(dA) + ")");
}

BipartiteState classical_classical(const Eigen::MatrixXd& probabilities, const CMatrix& basis_a,
                                   const CMatrix& basis_b) {
  const int dA = static_cast<int>(probabilities.rows());
  const int dB = static_cast<int>(probabilities.cols());
  if (dA < 1 || dB < 1) throw InvalidArgument("classical_classical: empty probability table");
  if (probabilities.minCoeff() < 0.0 || std::abs(probabilities.sum() - 1.0) > 1e-12) {
    throw InvalidArgument("classical_classical: table must be nonnegative and sum to 1");
  }
  require_orthonormal(basis_a, dA, "classical_classical");
  require_orthonormal(basis_b, dB, "classical_classical");
  const Cut cut(dA, dB);
  CMatrix xi = CMatrix::Zero(cut.d(), cut.d());
  for (int i = 0; i < dA; ++i) {
    for (int j = 0; j < dB; ++j) {
      if (probabilities(i, j) == 0.0) continue;
      xi += probabilities(i, j) *
            tensor(CMatrix(projector(basis_a.col(i))), CMatrix(projector(basis_b.col(j))));
    }
  }
  return make_state(std::move(xi), cut, "classical_classical");
}

BipartiteState quantum_classical(const std::vector<double>& weights,
                                 const std::vector<CMatrix>& local_states, const CMatrix& basis_b) {
  if (weights.empty() || weights.size() != local_states.size()) {
    throw InvalidArgument("quantum_classical: need one weight per local state");
  }
  const int dB = static_cast<int>(basis_b.cols());
  if (static_cast<int>(weights.size()) > dB) {
    throw InvalidArgument("quantum_classical: more components than basis vectors");
  }
  require_orthonormal(basis_b, dB, "quantum_classical");
  const int dA = static_cast<int>(local_states.front().rows());
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw InvalidArgument("quantum_classical: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("quantum_classical: weights must sum to 1");
  const Cut cut(dA, dB);
  CMatrix xi = CMatrix::Zero(cut.d(), cut.d());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    validate_state(local_states[j], Cut(dA, 1));
    xi += weights[j] * tensor(local_states[j], CMatrix(projector(basis_b.col(j))));
  }
  return make_state(std::move(xi), cut, "quantum_classical");
}

BipartiteState werner(int dA, double k) {
  if (dA < 2) throw InvalidArgument("werner: dimension must be at least 2");
  if (!(std::abs(k) <= 1.0)) throw InvalidArgument("werner: |k| must be <= 1, got " + fmt_num(k));
  const double d = dA;
  CMatrix rho = ((d - k) * identity(dA * dA) + (d * k - 1.0) * flip_operator(dA)) / (d * d * d - d);
  return make_state(std::move(rho), Cut(dA, dA),
                    "werner(" + std::to_string(dA) + "," + fmt_num(k) + ")");
}

BipartiteState horodecki_3x3(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw InvalidArgument("horodecki_3x3: k must lie in [0,1], got " + fmt_num(k));
  }
  const Cut cut(3, 3);
  CMatrix q = identity(9);
  for (int i = 0; i < 3; ++i) q(cut.index(i, i), cut.index(i, i)) = 0.0;
  q(cut.index(2, 0), cut.index(2, 0)) = 0.0;

  CVector psi = CVector::Zero(9);
  for (int i = 0; i < 3; ++i) psi(cut.index(i, i)) = 1.0 / std::sqrt(3.0);

  const CVector local = std::sqrt((1.0 + k) / 2.0) * ket(3, 0) + std::sqrt((1.0 - k) / 2.0) * ket(3, 2);
  const CVector phi = tensor(ket(3, 2), local);

  CMatrix rho = (k * (3.0 * projector(psi) + q) + projector(phi)) / (8.0 * k + 1.0);
  return make_state(std::move(rho), cut, "horodecki_3x3(" + fmt_num(k) + ")");
}

std::vector<CVector> upb_tiles_vectors() {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<CVector> out;
  for (int j = 0; j < 4; ++j) {
    out.push_back(tensor(ket(4, j), CVector(s * (ket(4, (j + 1) % 4) - ket(4, (j + 2) % 4)))));
  }
  for (int j = 0; j < 4; ++j) {
    out.push_back(tensor(CVector(s * (ket(4, j) - ket(4, (j + 1) % 4))), ket(4, j)));
  }
  out.push_back(CVector::Constant(16, 0.25));
  return out;
}

BipartiteState upb_tiles_4x4() {
  CMatrix rho = identity(16);
  for (const auto& v : upb_tiles_vectors()) rho -= projector(v);
  rho /= 7.0;
  return make_state(std::move(rho), Cut(4, 4), "upb_tiles_4x4");
}

BipartiteState mix_with_noise(const BipartiteState& state, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("mix_with_noise: s must lie in [0,1]");
  const int d = state.cut.d();
  CMatrix rho = (s / d) * identity(d) + (1.0 - s) * state.rho;
  return make_state(std::move(rho), state.cut, state.label + "+noise(" + fmt_num(s) + ")");
}

BipartiteState rebipartition(const BipartiteState& state, const Cut& new_cut) {
  if (new_cut.d() != state.cut.d()) {
    throw InvalidArgument("rebipartition: new cut " + std::to_string(new_cut.dA) + "x" +
                          std::to_string(new_cut.dB) + " does not match dimension " +
                          std::to_string(state.cut.d()));
  }
  return {state.rho, new_cut, state.label};
}

}  // namespace qcorr
