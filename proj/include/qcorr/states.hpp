#pragma once

#include <string>
#include <vector>

#include "qcorr/matops.hpp"

namespace qcorr {

// Density matrix with an explicit bipartite cut. Construct through
// make_state (or the family constructors), which enforce unit trace,
// Hermiticity and positivity.
struct BipartiteState {
  CMatrix rho;
  Cut cut;
  std::string label;
};

BipartiteState make_state(CMatrix rho, Cut cut, std::string label);

// Throws InvalidArgument describing the first violated invariant.
void validate_state(const CMatrix& rho, const Cut& cut);

BipartiteState max_entangled(int dA);

// xi = sum_ij P_ij |e_i><e_i| (x) |f_j><f_j|; bases are columns.
BipartiteState classical_classical(const Eigen::MatrixXd& probabilities, const CMatrix& basis_a,
                                   const CMatrix& basis_b);

// xi = sum_j p_j rho_j (x) |f_j><f_j|.
BipartiteState quantum_classical(const std::vector<double>& weights,
                                 const std::vector<CMatrix>& local_states, const CMatrix& basis_b);

// Werner family on dA x dA: [(dA - k) I + (dA k - 1) F] / (dA^3 - dA), with
// F the flip operator, so that Tr(F rho) = k. NPT exactly for k < 0.
BipartiteState werner(int dA, double k);

// Horodecki 3x3 PPT-entangled family, entangled for 0 < k < 1.
BipartiteState horodecki_3x3(double k);

// The nine orthonormal product vectors of the 4x4 tiles-type UPB.
std::vector<CVector> upb_tiles_vectors();

// (I - sum_k |psi_k><psi_k|) / 7.
BipartiteState upb_tiles_4x4();

// s I/d + (1 - s) rho.
BipartiteState mix_with_noise(const BipartiteState& state, double s);

BipartiteState rebipartition(const BipartiteState& state, const Cut& new_cut);

}  // namespace qcorr
