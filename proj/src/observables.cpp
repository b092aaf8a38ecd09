#include "boundariness/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boundariness/errors.hpp"
#include "boundariness/random.hpp"

namespace boundariness::observables {

namespace {

linalg::CVector column(const linalg::Matrix& m, std::size_t k) {
  linalg::CVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, k);
  return v;
}

double objective(const std::vector<HermitianMatrix>& diffs, std::span<const linalg::Complex> psi) {
  double acc = 0.0;
  for (const auto& d : diffs) acc += std::abs(d.expectation(psi));
  return acc;
}

HermitianMatrix signed_sum(const std::vector<HermitianMatrix>& diffs, std::span<const double> signs) {
  HermitianMatrix m = HermitianMatrix::zeros(diffs.front().dim());
  for (std::size_t j = 0; j < diffs.size(); ++j) m += signs[j] * diffs[j];
  return m;
}

// Fix the signs of <D_j>, jump to the top eigenvector of sum s_j D_j; the
// objective never decreases along the way.
double refine(const std::vector<HermitianMatrix>& diffs, linalg::CVector psi) {
  double value = objective(diffs, psi);
  std::vector<double> signs(diffs.size());
  for (int it = 0; it < 100; ++it) {
    for (std::size_t j = 0; j < diffs.size(); ++j) signs[j] = diffs[j].expectation(psi) >= 0.0 ? 1.0 : -1.0;
    const linalg::EigenDecomposition eig = linalg::eigh(signed_sum(diffs, signs));
    linalg::CVector next = column(eig.eigenvectors, eig.eigenvalues.size() - 1);
    const double next_value = objective(diffs, next);
    if (next_value <= value + 1e-15) break;
    value = next_value;
    psi = std::move(next);
  }
  return value;
}

}  // namespace

Povm::Povm(std::vector<HermitianMatrix> effects, double psd_tol) : effects_(std::move(effects)) {
  if (effects_.size() < 2) throw InputError("POVM needs at least two effects");
  const std::size_t d = effects_.front().dim();
  linalg::Matrix sum(d, d);
  for (std::size_t j = 0; j < effects_.size(); ++j) {
    if (effects_[j].dim() != d)
      throw InputError("POVM effects[" + std::to_string(j) + "] has dimension " + std::to_string(effects_[j].dim()) +
                       ", expected " + std::to_string(d));
    if (!linalg::is_psd(effects_[j], psd_tol))
      throw InputError("POVM effects[" + std::to_string(j) + "] is not positive semidefinite");
    sum += effects_[j].matrix();
  }
  sum -= linalg::Matrix::identity(d);
  if (sum.max_abs() > 1e-10)
    throw InputError("POVM effects do not sum to the identity (max deviation " + std::to_string(sum.max_abs()) + ")");
}

PovmBoundariness povm_boundariness(const Povm& c) {
  const std::size_t n = c.size();
  const std::size_t d = c.dim();
  double lambda = 0.0;
  std::size_t k = 0;
  linalg::CVector psi;
  for (std::size_t j = 0; j < n; ++j) {
    const linalg::EigenDecomposition eig = linalg::eigh(c.effect(j));
    if (j == 0 || eig.eigenvalues.front() < lambda) {
      lambda = eig.eigenvalues.front();
      k = j;
      psi = eig.eigenvector(0);
    }
  }
  lambda = std::max(0.0, lambda);

  const std::size_t partner = k == 0 ? 1 : 0;
  const HermitianMatrix proj = HermitianMatrix::projector(psi);
  std::vector<HermitianMatrix> a, b;
  a.reserve(n);
  b.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) {
      a.push_back(proj);
    } else if (j == partner) {
      a.push_back(HermitianMatrix::identity(d) - proj);
    } else {
      a.push_back(HermitianMatrix::zeros(d));
    }
    b.push_back((1.0 / (1.0 - lambda)) * (c.effect(j) - lambda * a.back()));
  }
  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    residual = std::max(residual, linalg::frobenius_distance(c.effect(j), lambda * a[j] + (1.0 - lambda) * b[j]));
  return {lambda, k, Povm(std::move(a)), Povm(std::move(b)), std::move(psi), residual};
}

bool povm_is_boundary(const Povm& c, double tol) {
  for (const auto& e : c.effects())
    if (linalg::min_eigenvalue(e) <= tol) return true;
  return false;
}

double povm_distance_to(const Povm& c, const Povm& a, std::size_t n_restarts, std::uint64_t seed) {
  if (c.dim() != a.dim())
    throw InputError("povm_distance_to: dimension mismatch (" + std::to_string(c.dim()) + " vs " +
                     std::to_string(a.dim()) + ")");
  const std::size_t d = c.dim();
  const std::size_t n = std::max(c.size(), a.size());
  std::vector<HermitianMatrix> diffs;
  diffs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    HermitianMatrix dj = j < c.size() ? c.effect(j) : HermitianMatrix::zeros(d);
    if (j < a.size()) dj -= a.effect(j);
    diffs.push_back(std::move(dj));
  }

  std::vector<linalg::CVector> starts;
  starts.push_back(povm_boundariness(c).psi);
  for (const auto& dj : diffs) {
    const linalg::EigenDecomposition eig = linalg::eigh(dj);
    for (std::size_t k = 0; k < d; ++k) starts.push_back(eig.eigenvector(k));
  }
  if (n <= 10) {
    std::vector<double> signs(n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      for (std::size_t j = 0; j < n; ++j) signs[j] = (mask >> j) & 1U ? -1.0 : 1.0;
      const linalg::EigenDecomposition eig = linalg::eigh(signed_sum(diffs, signs));
      starts.push_back(eig.eigenvector(d - 1));
    }
  }
  const sampling::RandomStream base = sampling::derive_stream(seed, "povm-distance");
  for (std::size_t r = 0; r < n_restarts; ++r) {
    sampling::RandomStream rng = base.fork(r);
    starts.push_back(random::random_pure_state(rng, d));
  }

  std::vector<double> values(starts.size());
  sampling::parallel_for(starts.size(), [&](std::size_t i) { values[i] = refine(diffs, starts[i]); });
  const double best = *std::max_element(values.begin(), values.end());
  if (best > 2.0 * (1.0 + 1e-9)) throw ClaimViolation("POVM distance estimate exceeds 2: " + std::to_string(best));
  return best;
}

Povm random_povm(sampling::RandomStream& rng, std::size_t dim, std::size_t outcomes) {
  if (outcomes < 2) throw InputError("random_povm: need at least two outcomes");
  const linalg::Matrix v = random::haar_isometry(rng, outcomes * dim, dim);
  std::vector<HermitianMatrix> effects;
  for (std::size_t j = 0; j < outcomes; ++j) {
    linalg::Matrix block_adj(dim, dim);  // V_j^dagger
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t col = 0; col < dim; ++col) block_adj(col, r) = std::conj(v(j * dim + r, col));
    effects.push_back(linalg::congruence(block_adj, HermitianMatrix::identity(dim)));
  }
  return Povm(std::move(effects));
}

convex::ConvexOracleSet povm_oracle_set(std::size_t dim, std::size_t outcomes) {
  if (dim == 0 || outcomes < 2) throw InputError("povm_oracle_set: need dim >= 1 and outcomes >= 2");
  const std::size_t block = dim * dim;
  convex::ConvexOracleSet set;
  set.ambient_dim = outcomes * block;
  set.membership = [dim, outcomes, block](std::span<const double> v, double tol) {
    linalg::Matrix sum(dim, dim);
    for (std::size_t j = 0; j < outcomes; ++j) {
      const HermitianMatrix e = linalg::from_real_coordinates(v.subspan(j * block, block), dim);
      if (!linalg::is_psd(e, tol)) return false;
      sum += e.matrix();
    }
    sum -= linalg::Matrix::identity(dim);
    return sum.max_abs() <= std::max(tol, 1e-8);
  };
  set.sample_extremal = [dim, outcomes, block](std::uint64_t seed, std::uint64_t index) {
    sampling::RandomStream rng = sampling::derive_stream(seed, "projective-povms").fork(index);
    const linalg::Matrix u = random::haar_unitary(rng, dim);
    std::vector<HermitianMatrix> effects(outcomes, HermitianMatrix::zeros(dim));
    for (std::size_t i = 0; i < dim; ++i) effects[rng() % outcomes] += HermitianMatrix::projector(column(u, i));
    std::vector<double> out;
    out.reserve(outcomes * block);
    for (const auto& e : effects) {
      const std::vector<double> coords = linalg::to_real_coordinates(e);
      out.insert(out.end(), coords.begin(), coords.end());
    }
    return out;
  };
  return set;
}

}  // namespace boundariness::observables
