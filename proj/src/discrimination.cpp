#include "boundariness/discrimination.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "boundariness/errors.hpp"
#include "boundariness/random.hpp"
#include "boundariness/sampling.hpp"

namespace boundariness::discrimination {

namespace {

using linalg::Complex;
using linalg::CVector;
using linalg::HermitianMatrix;

constexpr std::size_t kAngles = 7;  // S^7 in R^8 = C^4
using Angles = std::array<double, kAngles>;

CVector from_angles(const Angles& a) {
  std::array<double, kAngles + 1> x{};
  double sin_prod = 1.0;
  for (std::size_t k = 0; k < kAngles; ++k) {
    x[k] = sin_prod * std::cos(a[k]);
    sin_prod *= std::sin(a[k]);
  }
  x[kAngles] = sin_prod;
  CVector psi(4);
  for (std::size_t k = 0; k < 4; ++k) psi[k] = Complex(x[2 * k], x[2 * k + 1]);
  return psi;
}

Angles to_angles(std::span<const Complex> psi) {
  std::array<double, kAngles + 1> x{};
  for (std::size_t k = 0; k < 4; ++k) {
    x[2 * k] = psi[k].real();
    x[2 * k + 1] = psi[k].imag();
  }
  Angles a{};
  for (std::size_t k = 0; k < kAngles; ++k) {
    double tail = 0.0;
    for (std::size_t j = k + 1; j <= kAngles; ++j) tail += x[j] * x[j];
    a[k] = std::atan2(std::sqrt(tail), x[k]);
  }
  // The last angle carries the sign of the final coordinate.
  if (x[kAngles] < 0.0) a[kAngles - 1] = 2.0 * std::numbers::pi - a[kAngles - 1];
  return a;
}

// d (I (x) M^T) D (I (x) M^T)^dagger with psi = sum M_ij |i>|j>.
double output_distance(const HermitianMatrix& diff, std::size_t d_out, std::size_t d, std::span<const Complex> psi) {
  linalg::Matrix mt(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) mt(j, i) = psi[i * d + j];
  const linalg::Matrix op = linalg::kron(linalg::Matrix::identity(d_out), mt);
  return static_cast<double>(d) * linalg::trace_norm(linalg::congruence(op, diff));
}

double refine(const HermitianMatrix& diff, Angles a) {
  auto f = [&](const Angles& v) { return output_distance(diff, 2, 2, from_angles(v)); };
  constexpr double inv_phi = 0.6180339887498949;
  double best = f(a);
  double width = std::numbers::pi / 2;
  for (int sweep = 0; sweep < 200 && width > 1e-7; ++sweep) {
    const double start = best;
    for (std::size_t k = 0; k < kAngles; ++k) {
      double lo = a[k] - width, hi = a[k] + width;
      Angles probe = a;
      auto at = [&](double v) {
        probe[k] = v;
        return f(probe);
      };
      double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
      double f1 = at(x1), f2 = at(x2);
      for (int it = 0; it < 40 && hi - lo > 1e-10; ++it) {
        if (f1 >= f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - inv_phi * (hi - lo);
          f1 = at(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + inv_phi * (hi - lo);
          f2 = at(x2);
        }
      }
      const double xm = f1 >= f2 ? x1 : x2;
      const double fm = std::max(f1, f2);
      if (fm > best) {
        best = fm;
        a[k] = xm;
      }
    }
    if (best - start < 1e-8) width *= 0.5;
  }
  return best;
}

}  // namespace

double p_error_from_norm(double norm) {
  if (!(norm >= -1e-12 && norm <= 2.0 + 1e-12))
    throw InputError(fmt::format("p_error_from_norm: norm {} outside [0, 2]", norm));
  return 0.5 * (1.0 - std::clamp(norm, 0.0, 2.0) / 2.0);
}

namespace {

DiscriminationReport make_report(double norm, double bound, bool lower_bound) {
  DiscriminationReport r;
  r.norm = std::clamp(norm, 0.0, 2.0);
  r.p_error = p_error_from_norm(r.norm);
  r.boundariness_bound = bound;
  r.saturated = std::abs(r.norm - 2.0 * (1.0 - bound)) <= 1e-9;
  r.norm_is_lower_bound = lower_bound && !r.saturated;
  if (r.p_error < 0.5 * bound - 1e-9)
    throw ClaimViolation(fmt::format("p_error {:.12g} below half the boundariness {:.12g}", r.p_error, bound));
  return r;
}

}  // namespace

DiscriminationReport state_discrimination(const states::DensityMatrix& rho, const states::DensityMatrix& xi) {
  if (rho.dim() != xi.dim())
    throw InputError(fmt::format("state_discrimination: dimension mismatch ({} vs {})", rho.dim(), xi.dim()));
  const double norm = linalg::trace_norm(rho.matrix() - xi.matrix());
  const double bound = std::max(states::state_boundariness(rho).b, states::state_boundariness(xi).b);
  return make_report(norm, bound, false);
}

DiscriminationReport observable_discrimination(const observables::Povm& c, const observables::Povm& a,
                                               std::size_t n_restarts, std::uint64_t seed) {
  if (c.dim() != a.dim() || c.size() != a.size())
    throw InputError(fmt::format("observable_discrimination: shape mismatch ({} outcomes in dim {} vs {} in dim {})",
                                 c.size(), c.dim(), a.size(), a.dim()));
  const double norm = observables::povm_distance_to(c, a, n_restarts, seed);
  const double bound =
      std::max(observables::povm_boundariness(c).b, observables::povm_boundariness(a).b);
  return make_report(norm, bound, true);
}

double channel_output_distance(const channels::ChoiOperator& e, const channels::ChoiOperator& f,
                               std::span<const Complex> psi) {
  const std::size_t d = e.d_in();
  if (e.d_out() != f.d_out() || d != f.d_in()) throw InputError("channel_output_distance: dimension mismatch");
  if (psi.size() != d * d) throw InputError(fmt::format("input state has length {}, expected {}", psi.size(), d * d));
  return output_distance(e.matrix() - f.matrix(), e.d_out(), d, psi);
}

CVector erasure_diamond_seed(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError(fmt::format("erasure_diamond_seed: p = {} outside (0, 1)", p));
  return {std::sqrt(1.0 - p), 0.0, 0.0, std::sqrt(p)};
}

double channel_diamond_lower_bound(const channels::ChoiOperator& e, const channels::ChoiOperator& f,
                                   std::size_t n_restarts, std::uint64_t seed, std::span<const CVector> extra_seeds) {
  if (e.d_in() != 2 || e.d_out() != 2 || f.d_in() != 2 || f.d_out() != 2)
    throw InputError("channel_diamond_lower_bound: qubit channels only");
  const HermitianMatrix diff = e.matrix() - f.matrix();

  std::vector<Angles> starts;
  starts.push_back(to_angles(channels::maximally_entangled(2)));
  for (int k = 0; k <= 16; ++k) {
    const double a = std::numbers::pi / 2 * k / 16.0;
    const CVector psi = {std::cos(a), 0.0, 0.0, std::sin(a)};
    starts.push_back(to_angles(psi));
  }
  for (const CVector& s : extra_seeds) {
    if (s.size() != 4) throw InputError("diamond seed states must have length 4");
    const double n = linalg::norm(s);
    if (!(n > 0.0)) throw InputError("diamond seed state is zero");
    CVector unit(s);
    for (auto& v : unit) v /= n;
    starts.push_back(to_angles(unit));
  }
  const sampling::RandomStream base = sampling::derive_stream(seed, "diamond-restarts");
  for (std::size_t i = 0; i < n_restarts; ++i) {
    sampling::RandomStream rng = base.fork(i);
    starts.push_back(to_angles(random::random_pure_state(rng, 4)));
  }

  std::vector<double> values(starts.size());
  sampling::parallel_for(starts.size(), [&](std::size_t i) { values[i] = refine(diff, starts[i]); });
  const double best = *std::max_element(values.begin(), values.end());
  if (best > 2.0 + 1e-9) throw ClaimViolation(fmt::format("diamond lower bound {:.12g} exceeds 2", best));
  return std::min(best, 2.0);
}

bool tightness_check([[maybe_unused]] const channels::ChoiOperator& e, double b_value, double lower, double tol) {
  return lower >= 2.0 * (1.0 - b_value) - tol;
}

}  // namespace boundariness::discrimination
