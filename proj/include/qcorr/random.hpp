#pragma once

#include <cstdint>
#include <random>

#include "qcorr/matops.hpp"

namespace qcorr {

using Rng = std::mt19937_64;

// splitmix64 finalizer; gives independent per-task seeds so results do not
// depend on how tasks are scheduled across workers.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

CVector haar_vector(int dim, Rng& rng);
CMatrix haar_unitary(int dim, Rng& rng);

// Ginibre-induced random density matrix of the given rank (full rank if 0).
CMatrix random_density(int dim, Rng& rng, int rank = 0);

// Random Hermitian matrix with i.i.d. Gaussian entries (GUE up to scale).
CMatrix random_hermitian(int dim, Rng& rng);

}  // namespace qcorr
