#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "boundariness/channels.hpp"
#include "boundariness/linalg.hpp"
#include "boundariness/observables.hpp"
#include "boundariness/states.hpp"

namespace boundariness::discrimination {

struct DiscriminationReport {
  double norm = 0.0;
  bool norm_is_lower_bound = false;
  double p_error = 0.5;
  double boundariness_bound = 0.0;  // max of the two boundariness values
  bool saturated = false;           // norm = 2(1 - boundariness_bound) within 1e-9
};

/// 1/2 (1 - norm/2); norm must lie in [0, 2] (1e-12 slack is clamped).
double p_error_from_norm(double norm);

DiscriminationReport state_discrimination(const states::DensityMatrix& rho, const states::DensityMatrix& xi);

/// Norm from povm_distance_to, which is a lower bound unless it meets the
/// upper bound 2(1 - b) (then it is exact and the pair is saturating).
DiscriminationReport observable_discrimination(const observables::Povm& c, const observables::Povm& a,
                                               std::size_t n_restarts = 64, std::uint64_t seed = 1);

/// Best trace norm of ((E - F) (x) id)(|psi><psi|) over pure two-qubit inputs.
/// Seeds: the maximally entangled state, a Schmidt family
/// cos(a)|00> + sin(a)|11>, extra_seeds, then n_restarts random states; each
/// is refined by golden-section sweeps over hyperspherical angles.
double channel_diamond_lower_bound(const channels::ChoiOperator& e, const channels::ChoiOperator& f,
                                   std::size_t n_restarts, std::uint64_t seed,
                                   std::span<const linalg::CVector> extra_seeds = {});

/// The input sqrt(1-p)|00> + sqrt(p)|11> that saturates the bound for the
/// erasure channel against the identity.
linalg::CVector erasure_diamond_seed(double p);

/// Trace norm of ((E - F) (x) id)(|psi><psi|).
double channel_output_distance(const channels::ChoiOperator& e, const channels::ChoiOperator& f,
                               std::span<const linalg::Complex> psi);

/// lower >= 2(1 - b_value) - tol.
bool tightness_check(const channels::ChoiOperator& e, double b_value, double lower, double tol = 1e-4);

}  // namespace boundariness::discrimination
