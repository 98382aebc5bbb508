#include "qcorr/random.hpp"

namespace qcorr {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = cplx(n01(rng), n01(rng));
  return g;
}

}  // namespace

CVector haar_vector(int dim, Rng& rng) {
  CVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

CMatrix haar_unitary(int dim, Rng& rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is exactly Haar.
  for (int j = 0; j < dim; ++j) {
    const cplx rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

CMatrix random_density(int dim, Rng& rng, int rank) {
  const CMatrix g = ginibre(dim, rank > 0 ? rank : dim, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

CMatrix random_hermitian(int dim, Rng& rng) {
  return hermitian_part(ginibre(dim, dim, rng));
}

}  // namespace qcorr
