#include "boundariness/states.hpp"

#include <cmath>
#include <string>

#include "boundariness/errors.hpp"
#include "boundariness/random.hpp"

namespace boundariness::states {

DensityMatrix::DensityMatrix(HermitianMatrix mat, double psd_tol) : mat_(std::move(mat)) {
  if (std::abs(mat_.trace() - 1.0) > 1e-10)
    throw InputError("density matrix must have unit trace, got " + std::to_string(mat_.trace()));
  if (!linalg::is_psd(mat_, psd_tol)) throw InputError("density matrix is not positive semidefinite");
}

StateBoundariness state_boundariness(const DensityMatrix& rho) {
  const HermitianMatrix& m = rho.matrix();
  if (rho.dim() == 1) return {0.0, {0.0, m, m, 0.0}, {1.0}};

  const linalg::EigenDecomposition eig = linalg::eigh(m);
  const double lambda = std::max(0.0, eig.eigenvalues.front());
  linalg::CVector psi = eig.eigenvector(0);
  HermitianMatrix x = HermitianMatrix::projector(psi);
  HermitianMatrix z = (1.0 / (1.0 - lambda)) * (m - lambda * x);
  const double residual = linalg::frobenius_distance(m, lambda * x + (1.0 - lambda) * z);
  return {lambda, {lambda, std::move(x), std::move(z), residual}, std::move(psi)};
}

bool state_is_boundary(const DensityMatrix& rho, double tol) { return linalg::min_eigenvalue(rho.matrix()) <= tol; }

std::pair<double, double> state_bounds_check(const DensityMatrix& rho) {
  const double lambda = linalg::min_eigenvalue(rho.matrix());
  return {lambda, 1.0 - lambda};
}

convex::ConvexOracleSet state_oracle_set(std::size_t dim) {
  if (dim == 0) throw InputError("state_oracle_set: dimension must be >= 1");
  convex::ConvexOracleSet set;
  set.ambient_dim = dim * dim;
  set.membership = [dim](std::span<const double> v, double tol) {
    const HermitianMatrix m = linalg::from_real_coordinates(v, dim);
    return std::abs(m.trace() - 1.0) <= std::max(tol, 1e-10) && linalg::is_psd(m, tol);
  };
  set.sample_extremal = [dim](std::uint64_t seed, std::uint64_t index) {
    sampling::RandomStream rng = sampling::derive_stream(seed, "pure-states").fork(index);
    return linalg::to_real_coordinates(HermitianMatrix::projector(random::random_pure_state(rng, dim)));
  };
  return set;
}

DensityMatrix random_state(sampling::RandomStream& rng, std::size_t dim) {
  return DensityMatrix(random::random_density_matrix(rng, dim, dim));
}

}  // namespace boundariness::states
