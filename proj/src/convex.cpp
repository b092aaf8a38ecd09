#include "boundariness/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

#include "boundariness/errors.hpp"
#include "boundariness/lp.hpp"
#include "boundariness/sampling.hpp"

namespace boundariness::convex {

namespace {

void check_dim(const Polytope& poly, std::span<const double> v, const char* what) {
  if (v.size() != poly.ambient_dim())
    throw InputError(std::string(what) + ": expected a vector of length " + std::to_string(poly.ambient_dim()) +
                     ", got " + std::to_string(v.size()));
  for (double c : v)
    if (!std::isfinite(c)) throw InputError(std::string(what) + ": non-finite coordinate");
}

// maximize t s.t. t x + sum c_i v_i = y, t + sum c_i = 1, t, c >= 0.
lp::Solution weight_lp(const Polytope& poly, std::span<const double> y, std::span<const double> x) {
  const std::size_t n = poly.ambient_dim();
  const std::size_t nv = poly.size();
  lp::Problem prob;
  prob.sense = lp::Sense::maximize;
  prob.objective.assign(nv + 1, 0.0);
  prob.objective[0] = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> row(nv + 1);
    row[0] = x[k];
    for (std::size_t i = 0; i < nv; ++i) row[i + 1] = poly.vertices()[i][k];
    prob.a_eq.push_back(std::move(row));
    prob.b_eq.push_back(y[k]);
  }
  prob.a_eq.emplace_back(nv + 1, 1.0);
  prob.b_eq.push_back(1.0);
  lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal)
    throw NumericalError(std::string("weight function LP ended ") + lp::to_string(sol.status));
  return sol;
}

}  // namespace

double euclidean_norm(std::span<const double> v) {
  double acc = 0.0;
  for (double c : v) acc += c * c;
  return std::sqrt(acc);
}

Polytope::Polytope(std::size_t ambient_dim, std::vector<Vector> vertices)
    : ambient_dim_(ambient_dim), vertices_(std::move(vertices)) {
  if (ambient_dim_ == 0) throw InputError("polytope: ambient_dim must be >= 1");
  if (vertices_.empty()) throw InputError("polytope: at least one vertex is required");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].size() != ambient_dim_)
      throw InputError("polytope: vertices[" + std::to_string(i) + "] has length " +
                       std::to_string(vertices_[i].size()) + ", expected " + std::to_string(ambient_dim_));
    for (double c : vertices_[i])
      if (!std::isfinite(c)) throw InputError("polytope: vertices[" + std::to_string(i) + "] is not finite");
    for (std::size_t j = 0; j < i; ++j) {
      double dist = 0.0;
      for (std::size_t k = 0; k < ambient_dim_; ++k)
        dist = std::max(dist, std::abs(vertices_[i][k] - vertices_[j][k]));
      if (dist <= 1e-12)
        throw InputError("polytope: vertices[" + std::to_string(i) + "] duplicates vertices[" + std::to_string(j) +
                         "]");
    }
  }
}

bool Polytope::contains(std::span<const double> y, double tol) const {
  check_dim(*this, y, "contains");
  // L1 distance to the hull: min sum(e+ + e-) s.t. sum c_i v_i + e+ - e- = y, sum c = 1.
  const std::size_t n = ambient_dim_;
  const std::size_t nv = vertices_.size();
  lp::Problem prob;
  prob.objective.assign(nv + 2 * n, 0.0);
  for (std::size_t k = 0; k < 2 * n; ++k) prob.objective[nv + k] = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> row(nv + 2 * n, 0.0);
    for (std::size_t i = 0; i < nv; ++i) row[i] = vertices_[i][k];
    row[nv + k] = 1.0;
    row[nv + n + k] = -1.0;
    prob.a_eq.push_back(std::move(row));
    prob.b_eq.push_back(y[k]);
  }
  std::vector<double> sum_row(nv + 2 * n, 0.0);
  std::fill(sum_row.begin(), sum_row.begin() + static_cast<std::ptrdiff_t>(nv), 1.0);
  prob.a_eq.push_back(std::move(sum_row));
  prob.b_eq.push_back(1.0);
  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) throw NumericalError("membership LP did not reach an optimum");
  return sol.value <= std::max(tol, 1e-12);
}

double weight_function(const Polytope& poly, std::span<const double> y, std::span<const double> x) {
  check_dim(poly, y, "weight_function(y)");
  check_dim(poly, x, "weight_function(x)");
  if (!poly.contains(y)) throw InputError("weight_function: y lies outside the polytope");
  if (!poly.contains(x)) throw InputError("weight_function: x lies outside the polytope");
  return std::clamp(weight_lp(poly, y, x).value, 0.0, 1.0);
}

PolytopeBoundariness boundariness_polytope(const Polytope& poly, std::span<const double> y) {
  check_dim(poly, y, "boundariness_polytope");
  if (!poly.contains(y)) throw InputError("boundariness_polytope: y lies outside the polytope");

  PolytopeBoundariness out;
  const Vector yv(y.begin(), y.end());
  if (poly.size() == 1) {
    out.certificate = {0.0, yv, yv, 0.0};
    return out;
  }

  double best = std::numeric_limits<double>::infinity();
  lp::Solution best_sol;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    lp::Solution sol = weight_lp(poly, y, poly.vertices()[i]);
    const double t = std::clamp(sol.value, 0.0, 1.0);
    if (t < best - 1e-12) {
      best = t;
      best_sol = std::move(sol);
      out.vertex_index = i;
    }
  }
  if (best > 0.5 + 1e-12) throw ClaimViolation("boundariness exceeds 1/2: " + std::to_string(best));

  const std::size_t n = poly.ambient_dim();
  const Vector& x = poly.vertices()[out.vertex_index];
  Vector z(n, 0.0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const double c = best_sol.x[i + 1];
    for (std::size_t k = 0; k < n; ++k) z[k] += c * poly.vertices()[i][k];
  }
  for (double& c : z) c /= (1.0 - best);
  double res = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = y[k] - (best * x[k] + (1.0 - best) * z[k]);
    res += d * d;
  }
  out.b = best;
  out.certificate = {best, x, std::move(z), std::sqrt(res)};
  return out;
}

bool is_interior(const Polytope& poly, std::span<const double> y) {
  if (!poly.contains(y)) return false;
  return boundariness_polytope(poly, y).b > kInteriorTol;
}

ScanResult remark1_scan(const ConvexOracleSet& set, std::span<const double> y, const ScanOptions& options) {
  if (options.n_samples < 1) throw InputError("remark1_scan: n_samples must be >= 1");
  if (y.size() != set.ambient_dim)
    throw InputError("remark1_scan: point has length " + std::to_string(y.size()) + ", set has dimension " +
                     std::to_string(set.ambient_dim));
  if (!set.membership(y, options.tol)) throw InputError("remark1_scan: y fails the membership test");

  const std::size_t count = options.n_samples;
  std::vector<Vector> xs(count);
  sampling::parallel_for(count, [&](std::size_t i) { xs[i] = set.sample_extremal(options.seed, i); });

  const std::size_t n = y.size();
  auto first_failure = [&](double t, std::size_t upto) {
    std::vector<char> ok(upto, 1);
    sampling::parallel_for(upto, [&](std::size_t i) {
      Vector z(n);
      for (std::size_t k = 0; k < n; ++k) z[k] = (y[k] - t * xs[i][k]) / (1.0 - t);
      ok[i] = set.membership(z, options.tol) ? 1 : 0;
    });
    return static_cast<std::size_t>(std::find(ok.begin(), ok.end(), 0) - ok.begin());
  };
  auto threshold = [&](std::size_t upto) {
    std::size_t failing = first_failure(0.5, upto);
    if (failing == upto) return std::pair<double, std::size_t>{0.5, upto};
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < options.bisect_depth; ++it) {
      const double mid = 0.5 * (lo + hi);
      const std::size_t f = first_failure(mid, upto);
      if (f == upto) {
        lo = mid;
      } else {
        hi = mid;
        failing = f;
      }
    }
    return std::pair<double, std::size_t>{lo, failing};
  };

  ScanResult out;
  const auto [b_all, worst] = threshold(count);
  out.b_upper = b_all;
  out.worst_index = worst == count ? 0 : worst;
  out.worst_x = xs[out.worst_index];
  out.resolution = 0.5 * std::ldexp(1.0, -options.bisect_depth);
  if (count >= 2) out.sampling_gap = std::max(0.0, threshold(count / 2).first - b_all);
  out.uncertainty = std::max(out.resolution, out.sampling_gap);
  return out;
}

double minkowski_gauge(const Polytope& poly, std::span<const double> y, std::span<const double> x) {
  check_dim(poly, y, "minkowski_gauge(y)");
  check_dim(poly, x, "minkowski_gauge(x)");
  if (!is_interior(poly, y))
    throw InputError("minkowski_gauge: y is not an interior point, the gauge of Z - y is undefined");
  if (!poly.contains(x)) throw InputError("minkowski_gauge: x lies outside the polytope");

  // min a s.t. a y - sum mu_i v_i = x - y, a - sum mu_i = 0, a, mu >= 0.
  const std::size_t n = poly.ambient_dim();
  const std::size_t nv = poly.size();
  lp::Problem prob;
  prob.objective.assign(nv + 1, 0.0);
  prob.objective[0] = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> row(nv + 1);
    row[0] = y[k];
    for (std::size_t i = 0; i < nv; ++i) row[i + 1] = -poly.vertices()[i][k];
    prob.a_eq.push_back(std::move(row));
    prob.b_eq.push_back(x[k] - y[k]);
  }
  std::vector<double> last(nv + 1, -1.0);
  last[0] = 1.0;
  prob.a_eq.push_back(std::move(last));
  prob.b_eq.push_back(0.0);
  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal)
    throw NumericalError(std::string("gauge LP ended ") + lp::to_string(sol.status));
  return std::max(0.0, sol.value);
}

ConeBase::ConeBase(Polytope base) : base_(std::move(base)) {
  const Vector origin(base_.ambient_dim(), 0.0);
  if (base_.contains(origin)) throw InputError("cone base: the origin lies in the base");
}

double base_norm(const ConeBase& cone, std::span<const double> v) {
  const Polytope& poly = cone.base();
  check_dim(poly, v, "base_norm");
  const std::size_t n = poly.ambient_dim();
  const std::size_t nv = poly.size();
  lp::Problem prob;
  prob.objective.assign(2 * nv, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> row(2 * nv);
    for (std::size_t i = 0; i < nv; ++i) {
      row[i] = poly.vertices()[i][k];
      row[nv + i] = -poly.vertices()[i][k];
    }
    prob.a_eq.push_back(std::move(row));
    prob.b_eq.push_back(v[k]);
  }
  const lp::Solution sol = lp::solve(prob);
  if (sol.status == lp::Status::infeasible)
    throw InputError("base_norm: vector is not in the span of the cone");
  if (sol.status != lp::Status::optimal) throw NumericalError("base_norm LP is unbounded");
  return std::max(0.0, sol.value);
}

HilbertRatios hilbert_inf_sup(const ConeBase& cone, std::span<const double> v, std::span<const double> w) {
  const Polytope& poly = cone.base();
  check_dim(poly, v, "hilbert_inf_sup(v)");
  check_dim(poly, w, "hilbert_inf_sup(w)");
  if (euclidean_norm(w) <= 1e-15) throw InputError("hilbert_inf_sup: w must be nonzero");

  const std::size_t n = poly.ambient_dim();
  const std::size_t nv = poly.size();
  auto make = [&](lp::Sense sense, double sign) {
    // sense lambda s.t. lambda w + sign * sum c_i u_i = v, lambda free, c >= 0
    lp::Problem prob;
    prob.sense = sense;
    prob.objective.assign(nv + 1, 0.0);
    prob.objective[0] = 1.0;
    prob.nonneg.assign(nv + 1, true);
    prob.nonneg[0] = false;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> row(nv + 1);
      row[0] = w[k];
      for (std::size_t i = 0; i < nv; ++i) row[i + 1] = sign * poly.vertices()[i][k];
      prob.a_eq.push_back(std::move(row));
      prob.b_eq.push_back(v[k]);
    }
    return lp::solve(prob);
  };

  HilbertRatios out;
  const lp::Solution lower = make(lp::Sense::maximize, 1.0);
  if (lower.status == lp::Status::infeasible) throw InputError("hilbert_inf_sup: v is not in the cone");
  if (lower.status == lp::Status::unbounded) throw InputError("hilbert_inf_sup: w is not a nonzero cone element");
  out.inf = lower.value;

  const lp::Solution upper = make(lp::Sense::minimize, -1.0);
  if (upper.status == lp::Status::infeasible) {
    out.sup = std::numeric_limits<double>::infinity();
    out.sup_finite = false;
  } else if (upper.status == lp::Status::unbounded) {
    throw InputError("hilbert_inf_sup: cone is not pointed along w");
  } else {
    out.sup = upper.value;
  }
  return out;
}

double hilbert_metric(const ConeBase& cone, std::span<const double> v, std::span<const double> w) {
  const HilbertRatios r = hilbert_inf_sup(cone, v, w);
  if (!r.sup_finite || r.inf <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, std::log(r.sup / r.inf));
}

ConvexOracleSet polytope_oracle(const Polytope& poly) {
  auto shared = std::make_shared<const Polytope>(poly);
  ConvexOracleSet set;
  set.ambient_dim = poly.ambient_dim();
  set.membership = [shared](std::span<const double> v, double tol) { return shared->contains(v, tol); };
  set.sample_extremal = [shared](std::uint64_t, std::uint64_t index) {
    return shared->vertices()[index % shared->size()];
  };
  return set;
}

ConvexOracleSet disk_oracle(double radius) {
  if (!(radius > 0.0)) throw InputError("disk_oracle: radius must be positive");
  ConvexOracleSet set;
  set.ambient_dim = 2;
  set.membership = [radius](std::span<const double> v, double tol) { return euclidean_norm(v) <= radius + tol; };
  set.sample_extremal = [radius](std::uint64_t seed, std::uint64_t index) {
    const double offset = 2.0 * std::numbers::pi * sampling::derive_stream(seed, "disk-extremal").uniform();
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double angle = offset + golden * static_cast<double>(index);
    return Vector{radius * std::cos(angle), radius * std::sin(angle)};
  };
  return set;
}

}  // namespace boundariness::convex
