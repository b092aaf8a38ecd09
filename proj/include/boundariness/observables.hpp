#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "boundariness/convex.hpp"
#include "boundariness/linalg.hpp"
#include "boundariness/sampling.hpp"

namespace boundariness::observables {

using linalg::HermitianMatrix;

/// Finite-outcome POVM: n >= 2 effects, each PSD at 1e-9, summing to the
/// identity within 1e-10. Zero effects are allowed.
class Povm {
 public:
  explicit Povm(std::vector<HermitianMatrix> effects, double psd_tol = linalg::kPsdTol);

  std::size_t dim() const { return effects_.front().dim(); }
  std::size_t size() const { return effects_.size(); }
  const HermitianMatrix& effect(std::size_t j) const { return effects_[j]; }
  const std::vector<HermitianMatrix>& effects() const { return effects_; }

 private:
  std::vector<HermitianMatrix> effects_;
};

struct PovmBoundariness {
  double b;
  std::size_t k;               // effect holding the smallest eigenvalue (lowest index on ties)
  Povm extremal;               // A: |psi><psi| at k, I - |psi><psi| at the smallest index != k
  Povm boundary;               // B = (C - b A) / (1 - b)
  linalg::CVector psi;
  double residual;             // max over j of ||C_j - (b A_j + (1 - b) B_j)||_F
};

PovmBoundariness povm_boundariness(const Povm& c);

bool povm_is_boundary(const Povm& c, double tol);

/// Lower estimate of sup over pure states of sum_j |<psi|C_j - A_j|psi>|.
/// The shorter POVM is padded with zero effects. Starting points: the
/// minimal eigenvector of C, eigenvectors of each C_j - A_j, top
/// eigenvectors of all sign combinations (n <= 10) and n_restarts random
/// states; each is refined by sign-pattern ascent.
double povm_distance_to(const Povm& c, const Povm& a, std::size_t n_restarts, std::uint64_t seed);

/// Effects of a Haar-random isometry split into n blocks (C_j = V_j^dagger V_j).
Povm random_povm(sampling::RandomStream& rng, std::size_t dim, std::size_t outcomes);

/// n-outcome POVMs on C^d; extremal samples are projective measurements that
/// assign each vector of a Haar-random basis to a uniformly chosen outcome.
convex::ConvexOracleSet povm_oracle_set(std::size_t dim, std::size_t outcomes);

}  // namespace boundariness::observables
