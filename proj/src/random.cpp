#include "boundariness/random.hpp"

#include <cmath>

#include "boundariness/errors.hpp"
#include "boundariness/kernels.hpp"

namespace boundariness::random {

using linalg::Complex;
using linalg::Matrix;

Matrix ginibre(sampling::RandomStream& rng, std::size_t rows, std::size_t cols) {
  Matrix g(rows, cols);
  const double s = std::sqrt(0.5);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      g(i, j) = {s * re, s * im};
    }
  return g;
}

linalg::CVector random_pure_state(sampling::RandomStream& rng, std::size_t dim) {
  if (dim == 0) throw InputError("random_pure_state: dimension must be >= 1");
  linalg::CVector v(dim);
  double n2 = 0.0;
  while (n2 < 1e-300) {
    for (auto& z : v) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      z = {re, im};
    }
    n2 = kernels::norm_sq(v.data(), v.size());
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : v) z *= inv;
  return v;
}

Matrix haar_isometry(sampling::RandomStream& rng, std::size_t rows, std::size_t cols) {
  if (cols == 0 || rows < cols) throw InputError("haar_isometry: need rows >= cols >= 1");
  // Work on rows of the transpose so every projection is a contiguous kernel call.
  Matrix q = ginibre(rng, cols, rows);
  for (std::size_t k = 0; k < cols; ++k) {
    Complex* vk = q.row(k).data();
    for (std::size_t j = 0; j < k; ++j) {
      const Complex* vj = q.row(j).data();
      kernels::axpy(-kernels::dotc(vj, vk, rows), vj, vk, rows);
    }
    const double nk = std::sqrt(kernels::norm_sq(vk, rows));
    if (nk < 1e-12) throw NumericalError("haar_isometry: rank-deficient Gaussian draw");
    for (std::size_t i = 0; i < rows; ++i) vk[i] /= nk;
  }
  return q.transpose();
}

Matrix haar_unitary(sampling::RandomStream& rng, std::size_t dim) { return haar_isometry(rng, dim, dim); }

linalg::HermitianMatrix random_density_matrix(sampling::RandomStream& rng, std::size_t dim, std::size_t rank) {
  if (rank == 0) throw InputError("random_density_matrix: rank must be >= 1");
  const Matrix g = ginibre(rng, dim, rank);
  linalg::HermitianMatrix rho = linalg::congruence(g, linalg::HermitianMatrix::identity(rank));
  rho *= 1.0 / rho.trace();
  return rho;
}

}  // namespace boundariness::random
