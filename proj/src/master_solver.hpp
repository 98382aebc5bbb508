#pragma once

#include <vector>

#include "qcorr/matops.hpp"

namespace qcorr::detail {

// Orthonormal real coordinates for d x d Hermitian matrices: the d diagonal
// entries, then sqrt(2) Re and sqrt(2) Im of each upper entry, so that
// Tr(HK) is the Euclidean dot product of coordinates.
RVector herm_to_coords(const CMatrix& h);
CMatrix coords_to_herm(const RVector& c, int d);
// Coordinates of |x><x| without forming the matrix.
RVector rank_one_coords(const CVector& x);

struct BallLpResult {
  RVector w;
  double objective = 0.0;
  double gap = 0.0;  // barrier duality-gap bound
  int newton_steps = 0;
  bool converged = false;
};

// min <c, w>  s.t.  <e, w> = 1,  A w >= 0,  |w| <= radius,
// where e holds the coordinates of the identity. Dense log-barrier method
// started from w = I/d, which is strictly feasible for every cut since
// <x|I|x>/d > 0.
BallLpResult solve_ball_lp(const RVector& c, const Eigen::MatrixXd& cuts, int d, double radius,
                           double tolerance);

}  // namespace qcorr::detail
