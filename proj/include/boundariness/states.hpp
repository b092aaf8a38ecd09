#pragma once

#include <cstddef>
#include <utility>

#include "boundariness/convex.hpp"
#include "boundariness/linalg.hpp"
#include "boundariness/sampling.hpp"

namespace boundariness::states {

using linalg::HermitianMatrix;

/// PSD at tolerance 1e-9 and unit trace within 1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix mat, double psd_tol = linalg::kPsdTol);

  const HermitianMatrix& matrix() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }

 private:
  HermitianMatrix mat_;
};

/// rho = t x + (1 - t) z with both x and z valid states, z rank-deficient.
struct MatrixCertificate {
  double t;
  HermitianMatrix x;
  HermitianMatrix z;
  double residual;  // Frobenius norm of rho - (t x + (1 - t) z)
};

struct StateBoundariness {
  double b;
  MatrixCertificate certificate;
  linalg::CVector min_eigenvector;
};

/// b(rho) = lambda_min(rho), certified by x = |psi><psi| for the first
/// minimal eigenvector and z = (rho - lambda_min x) / (1 - lambda_min).
/// A 1-dimensional state is the whole (single-point) set and gets b = 0.
StateBoundariness state_boundariness(const DensityMatrix& rho);

bool state_is_boundary(const DensityMatrix& rho, double tol);

/// (lambda_min, 1 - lambda_min), the a-priori bracket on b(rho).
std::pair<double, double> state_bounds_check(const DensityMatrix& rho);

/// States of dimension d as a convex oracle set over real coordinates of
/// Hermitian matrices. Extremal samples are Haar-random pure states.
convex::ConvexOracleSet state_oracle_set(std::size_t dim);

DensityMatrix random_state(sampling::RandomStream& rng, std::size_t dim);

}  // namespace boundariness::states
