#pragma once

#include <cstddef>

#include "boundariness/linalg.hpp"
#include "boundariness/sampling.hpp"

// Seeded samplers for the unitarily invariant measures used by the scans.
namespace boundariness::random {

/// i.i.d. standard complex Gaussian entries (real and imaginary parts each
/// with variance 1/2).
linalg::Matrix ginibre(sampling::RandomStream& rng, std::size_t rows, std::size_t cols);

/// Normalized complex-Gaussian vector (uniform on the unit sphere of C^d).
linalg::CVector random_pure_state(sampling::RandomStream& rng, std::size_t dim);

/// rows x cols matrix with orthonormal columns (rows >= cols), Haar
/// distributed: Gram-Schmidt on Gaussian columns keeps R's diagonal positive,
/// which is the QR phase fix.
linalg::Matrix haar_isometry(sampling::RandomStream& rng, std::size_t rows, std::size_t cols);

linalg::Matrix haar_unitary(sampling::RandomStream& rng, std::size_t dim);

/// G G^dagger / tr with G a dim x rank Ginibre matrix.
linalg::HermitianMatrix random_density_matrix(sampling::RandomStream& rng, std::size_t dim, std::size_t rank);

}  // namespace boundariness::random
