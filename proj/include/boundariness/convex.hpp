#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace boundariness::convex {

using Vector = std::vector<double>;

inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kInteriorTol = 1e-9;

/// Convex hull of a finite generator list in R^n. Generators need not all be
/// extreme; duplicates (L-infinity distance <= 1e-12) are rejected.
class Polytope {
 public:
  Polytope(std::size_t ambient_dim, std::vector<Vector> vertices);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  /// Feasibility of y = sum c_i v_i, sum c_i = 1, c >= 0 (phase-1 LP).
  bool contains(std::span<const double> y, double tol = kMembershipTol) const;

 private:
  std::size_t ambient_dim_;
  std::vector<Vector> vertices_;
};

/// y = t x + (1 - t) z with z on the boundary of the set.
struct DecompositionCertificate {
  double t = 0.0;
  Vector x;
  Vector z;
  double residual = 0.0;  // || y - (t x + (1 - t) z) ||_2
};

/// sup { t : (y - t x) / (1 - t) in poly }, solved as one LP over (t, c).
/// Throws InputError if y or x lies outside poly.
double weight_function(const Polytope& poly, std::span<const double> y, std::span<const double> x);

struct PolytopeBoundariness {
  double b = 0.0;
  DecompositionCertificate certificate;
  std::size_t vertex_index = 0;  // generator attaining the minimum (lowest index on ties)
};

/// Minimum of the weight function over the generators. A single-point
/// polytope has b = 0.
PolytopeBoundariness boundariness_polytope(const Polytope& poly, std::span<const double> y);

/// Relative algebraic interior: t_y(v) > kInteriorTol for every generator v.
bool is_interior(const Polytope& poly, std::span<const double> y);

/// Membership predicate plus an extremal-point sampler keyed by (seed, index).
struct ConvexOracleSet {
  std::size_t ambient_dim = 0;
  std::function<bool(std::span<const double>, double)> membership;
  std::function<Vector(std::uint64_t, std::uint64_t)> sample_extremal;
};

struct ScanOptions {
  std::size_t n_samples = 500;
  std::uint64_t seed = 1;
  double tol = kMembershipTol;
  int bisect_depth = 40;
};

struct ScanResult {
  double b_upper = 0.0;
  Vector worst_x;             // first sample whose z_t leaves the set just above b_upper
  std::size_t worst_index = 0;
  double resolution = 0.0;    // bisection step: 0.5 * 2^-depth
  double sampling_gap = 0.0;  // threshold(first half of samples) - threshold(all samples)
  double uncertainty = 0.0;   // max(resolution, sampling_gap)
};

/// Bisection on t in [0, 1/2]: t is feasible when (y - t x)/(1 - t) passes
/// membership for every sampled extremal x. Sampling is partial, so b_upper
/// is an upper bound on b(y) up to the bisection resolution. Deterministic
/// for a fixed seed; samples are checked in parallel.
ScanResult remark1_scan(const ConvexOracleSet& set, std::span<const double> y, const ScanOptions& options);

/// p_y(x): Minkowski gauge of Z - y evaluated at y - x. Requires y interior.
double minkowski_gauge(const Polytope& poly, std::span<const double> y, std::span<const double> x);

/// A polytope used as the base of the cone { a z : z in base, a >= 0 }.
/// Rejects bases containing the origin.
class ConeBase {
 public:
  explicit ConeBase(Polytope base);
  const Polytope& base() const { return base_; }

 private:
  Polytope base_;
};

/// min sum(a) + sum(b) over v = sum (a_i - b_i) w_i, a, b >= 0.
double base_norm(const ConeBase& base, std::span<const double> v);

struct HilbertRatios {
  double inf = 0.0;         // sup { l : v - l w in C }
  double sup = 0.0;         // inf { l : l w - v in C }; +inf when no such l
  bool sup_finite = true;
};

HilbertRatios hilbert_inf_sup(const ConeBase& base, std::span<const double> v, std::span<const double> w);

/// ln(sup(v/w) / inf(v/w)); +infinity when inf <= 0 or sup is unbounded.
double hilbert_metric(const ConeBase& base, std::span<const double> v, std::span<const double> w);

ConvexOracleSet polytope_oracle(const Polytope& poly);

/// Euclidean ball in R^2. The extremal sampler walks the circle with
/// golden-angle increments from a seed-dependent offset.
ConvexOracleSet disk_oracle(double radius);

double euclidean_norm(std::span<const double> v);

}  // namespace boundariness::convex
