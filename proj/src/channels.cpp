#include "boundariness/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "boundariness/random.hpp"

namespace boundariness::channels {

namespace {

using linalg::Complex;
using linalg::CVector;

void check_erasure_p(double p, const char* who) {
  if (!(p > 0.0 && p < 0.5)) throw InputError(std::string(who) + ": p must lie in (0, 1/2), got " + fmt::format("{}", p));
}

// Row-major flattening of K, which is the output (x) input index order.
CVector vec(const Matrix& k) { return CVector(k.data().begin(), k.data().end()); }

void check_rank2_params(const Rank2ChannelParams& pr) {
  auto bad = [](const std::string& what) { throw InputError("rank-2 channel parameters: " + what); };
  for (double v : {pr.q, pr.s, pr.alpha, pr.beta, pr.gamma, pr.theta})
    if (!std::isfinite(v)) bad("non-finite value");
  if (pr.q < 0.0 || pr.q >= 1.0) bad(fmt::format("q = {} outside [0, 1)", pr.q));
  if (pr.s <= 0.5 || pr.s > 1.0) bad(fmt::format("s = {} outside (1/2, 1]", pr.s));
  if (pr.s > 1.0 / (1.0 + pr.q) + 1e-12) bad(fmt::format("s = {} exceeds 1/(1+q) = {}", pr.s, 1.0 / (1.0 + pr.q)));
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (double a : {pr.alpha, pr.beta, pr.gamma})
    if (a < 0.0 || a > two_pi) bad(fmt::format("phase {} outside [0, 2pi]", a));
  if (pr.theta < 0.0 || pr.theta > std::numbers::pi) bad(fmt::format("theta = {} outside [0, pi]", pr.theta));
}

Rank2ChannelParams random_rank2_params(sampling::RandomStream& rng) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  Rank2ChannelParams pr;
  pr.q = rng.uniform();
  const double s_max = 1.0 / (1.0 + pr.q);
  pr.s = s_max - (s_max - 0.5) * rng.uniform();  // (1/2, s_max]
  pr.alpha = two_pi * rng.uniform();
  pr.beta = two_pi * rng.uniform();
  pr.gamma = two_pi * rng.uniform();
  pr.theta = std::numbers::pi * rng.uniform();
  return pr;
}

std::vector<double> axis_or(const sampling::ScanConfig& cfg, const char* name, std::vector<double> fallback) {
  const auto it = cfg.grid.find(name);
  return it == cfg.grid.end() ? fallback : it->second.values();
}

}  // namespace

ChoiOperator::ChoiOperator(std::size_t d_in, std::size_t d_out, HermitianMatrix mat, double psd_tol)
    : d_in_(d_in), d_out_(d_out), mat_(std::move(mat)) {
  if (d_in == 0 || d_out == 0) throw InputError("Choi operator: dimensions must be positive");
  if (mat_.dim() != d_in * d_out)
    throw InputError(fmt::format("Choi operator: matrix is {0}x{0}, expected {1}x{1} for d_in={2}, d_out={3}",
                                 mat_.dim(), d_in * d_out, d_in, d_out));
  if (std::abs(mat_.trace() - 1.0) > 1e-10)
    throw InputError(fmt::format("Choi operator: trace is {:.12g}, expected 1", mat_.trace()));
  if (!linalg::is_psd(mat_, psd_tol))
    throw InputError(fmt::format("Choi operator: not positive semidefinite (min eigenvalue {:.3g})",
                                 linalg::min_eigenvalue(mat_)));
  const HermitianMatrix reduced = linalg::partial_trace_first(mat_, d_out);
  const double dev = (reduced.matrix() - (1.0 / static_cast<double>(d_in)) * Matrix::identity(d_in)).max_abs();
  if (dev > 1e-9)
    throw InputError(fmt::format("Choi operator: trace over the output is not I/d_in (max deviation {:.3g})", dev));
}

ChoiOperator choi_from_kraus(std::span<const Matrix> kraus, std::size_t d_in, std::size_t d_out) {
  if (kraus.empty()) throw InputError("Kraus list is empty");
  Matrix completeness(d_in, d_in);
  Matrix acc(d_in * d_out, d_in * d_out);
  for (std::size_t n = 0; n < kraus.size(); ++n) {
    const Matrix& k = kraus[n];
    if (k.rows() != d_out || k.cols() != d_in)
      throw InputError(fmt::format("Kraus operator {} is {}x{}, expected {}x{}", n, k.rows(), k.cols(), d_out, d_in));
    completeness += linalg::matmul(k.adjoint(), k);
    acc += HermitianMatrix::projector(vec(k)).matrix();
  }
  completeness -= Matrix::identity(d_in);
  if (completeness.max_abs() > 1e-9)
    throw InputError(
        fmt::format("Kraus operators are not trace preserving (max deviation {:.3g})", completeness.max_abs()));
  acc *= Complex(1.0 / static_cast<double>(d_in));
  return ChoiOperator(d_in, d_out, HermitianMatrix(acc));
}

ChoiOperator choi_from_unitary(const Matrix& u) {
  const Matrix ops[] = {u};
  return choi_from_kraus(ops, u.cols(), u.rows());
}

CVector maximally_entangled(std::size_t d) {
  CVector v(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) v[j * d + j] = amp;
  return v;
}

bool channel_is_boundary(const ChoiOperator& e, double tol) { return linalg::min_eigenvalue(e.matrix()) <= tol; }

ChoiOperator erasure_choi(double p) {
  check_erasure_p(p, "erasure_choi");
  const double diag[] = {p / 2, p / 2, (1 - p) / 2, (1 - p) / 2};
  return ChoiOperator(2, 2, HermitianMatrix::diagonal(diag));
}

std::vector<Matrix> erasure_kraus(double p) {
  check_erasure_p(p, "erasure_kraus");
  const double xi[] = {p, 1 - p};
  std::vector<Matrix> ops;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t j = 0; j < 2; ++j) {
      Matrix k(2, 2);
      k(a, j) = std::sqrt(xi[a]);
      ops.push_back(std::move(k));
    }
  return ops;
}

std::array<double, 4> erasure_G_eigenvalues(double p, double t) {
  check_erasure_p(p, "erasure_G_eigenvalues");
  if (!(t >= 0.0 && t < 1.0)) throw InputError(fmt::format("erasure_G_eigenvalues: t = {} outside [0, 1)", t));
  const double root = std::sqrt((1 - 2 * p) * (1 - 2 * p) + 4 * t * t);
  return {p, 1 - p, 0.5 * (1 - 2 * t - root), 0.5 * (1 - 2 * t + root)};
}

double erasure_boundariness(double p) {
  check_erasure_p(p, "erasure_boundariness");
  const double b = p * (1 - p);
  if (!(b > p / 2)) throw ClaimViolation(fmt::format("erasure boundariness {} does not exceed lambda_min {}", b, p / 2));
  return b;
}

convex::ConvexOracleSet channel_oracle_set(std::size_t d_in, std::size_t d_out, std::size_t n_unitaries,
                                           bool include_rank2) {
  if (d_in == 0 || d_out == 0) throw InputError("channel_oracle_set: dimensions must be positive");
  if (d_in != d_out) throw InputError("channel_oracle_set: unitary samples need d_in == d_out");
  if (include_rank2 && d_in != 2) throw InputError("channel_oracle_set: rank-2 samples are qubit only");
  const std::size_t dim = d_in * d_out;
  convex::ConvexOracleSet set;
  set.ambient_dim = dim * dim;
  set.membership = [dim](std::span<const double> v, double tol) {
    const HermitianMatrix m = linalg::from_real_coordinates(v, dim);
    return std::abs(m.trace() - 1.0) <= 1e-8 && linalg::is_psd(m, tol);
  };
  set.sample_extremal = [d_in, n_unitaries](std::uint64_t seed, std::uint64_t index) {
    if (index < n_unitaries) {
      sampling::RandomStream rng = sampling::derive_stream(seed, "unitary-channels").fork(index);
      return linalg::to_real_coordinates(choi_from_unitary(random::haar_unitary(rng, d_in)).matrix());
    }
    sampling::RandomStream rng = sampling::derive_stream(seed, "rank2-channels").fork(index - n_unitaries);
    return linalg::to_real_coordinates(rank2_extremal_choi(random_rank2_params(rng)).f.matrix());
  };
  return set;
}

ChannelScanResult channel_scan_boundariness(const ChoiOperator& e, std::size_t n_unitaries, bool include_rank2,
                                            std::uint64_t seed, double psd_tol, int bisect_depth) {
  if (n_unitaries == 0) throw InputError("channel scan needs at least one sample");
  const convex::ConvexOracleSet set = channel_oracle_set(e.d_in(), e.d_out(), n_unitaries, include_rank2);
  const std::vector<double> y = linalg::to_real_coordinates(e.matrix());
  convex::ScanOptions opts;
  opts.n_samples = include_rank2 ? 2 * n_unitaries : n_unitaries;
  opts.seed = seed;
  opts.tol = psd_tol;
  opts.bisect_depth = bisect_depth;
  const convex::ScanResult r = convex::remark1_scan(set, y, opts);
  const std::size_t dim = e.d_in() * e.d_out();
  ChoiOperator worst(e.d_in(), e.d_out(), linalg::from_real_coordinates(r.worst_x, dim));
  return {r.b_upper,    std::move(worst),  r.worst_index, std::max(0.0, linalg::min_eigenvalue(e.matrix())),
          r.resolution, r.sampling_gap, r.uncertainty};
}

double prop6_unitary_witness(const ChoiOperator& e, std::span<const Complex> phi) {
  const std::size_t d = e.d_in();
  if (e.d_out() != d) throw InputError("unitary witness needs d_in == d_out");
  if (phi.size() != d * d) throw InputError(fmt::format("phi has length {}, expected {}", phi.size(), d * d));
  if (std::abs(linalg::norm(phi) - 1.0) > 1e-9) throw InputError("phi must have unit norm");
  const HermitianMatrix reduced = linalg::partial_trace_first(HermitianMatrix::projector(phi), d);
  if ((reduced.matrix() - (1.0 / static_cast<double>(d)) * Matrix::identity(d)).max_abs() > 1e-8)
    throw InputError("phi is not maximally entangled");

  const linalg::EigenDecomposition eig = linalg::eigh(e.matrix());
  const double l1 = eig.eigenvalues.front();
  if (l1 <= 1e-9) throw InputError("channel is on the boundary (lambda_min <= 1e-9)");
  std::size_t group = 0;
  while (group < eig.eigenvalues.size() && eig.eigenvalues[group] <= l1 + 1e-9) ++group;
  if (group == eig.eigenvalues.size()) throw BoundNotImprovable("bound not improvable: b may equal lambda_min");
  const double l2 = eig.eigenvalues[group];
  double alpha = 0.0;
  for (std::size_t k = 0; k < group; ++k) alpha += std::norm(linalg::inner(eig.eigenvector(k), phi));
  if (alpha >= 1.0 - 1e-12) throw BoundNotImprovable("bound not improvable: b may equal lambda_min");

  const double t = l1 * l2 / (l1 + (l2 - l1) * alpha);
  if (!linalg::is_psd(e.matrix() - t * HermitianMatrix::projector(phi)))
    throw NumericalError(fmt::format("unitary witness t = {:.12g} leaves E - tF non-PSD", t));
  return t;
}

double prop6_nonunitary_witness(const ChoiOperator& e, const ChoiOperator& f) {
  if (e.d_in() != f.d_in() || e.d_out() != f.d_out()) throw InputError("witness channels have different dimensions");
  const double lambda = linalg::min_eigenvalue(e.matrix());
  if (lambda <= 1e-9) throw InputError("channel is on the boundary (lambda_min <= 1e-9)");
  const double mu = linalg::max_eigenvalue(f.matrix());
  if (mu >= 1.0 - 1e-9) throw InputError("F is a unitary channel; use the unitary witness");
  const double t = lambda / mu;
  if (!linalg::is_psd(e.matrix() - t * f.matrix()))
    throw NumericalError(fmt::format("non-unitary witness t = {:.12g} leaves E - tF non-PSD", t));
  return t;
}

Rank2Choi rank2_extremal_choi(const Rank2ChannelParams& pr) {
  check_rank2_params(pr);
  const double r = std::clamp((1.0 - (1.0 + pr.q) * pr.s) / (1.0 - pr.q), 0.0, 1.0);
  const double c = std::cos(pr.theta / 2), sn = std::sin(pr.theta / 2);
  const CVector u = {c, std::polar(sn, pr.beta)};
  const CVector u_perp = {std::polar(sn, pr.gamma), -std::polar(c, pr.gamma + pr.beta)};
  const CVector e0 = {1.0, 0.0}, e1 = {0.0, 1.0};

  CVector psi(4), phi(4);
  const CVector a = linalg::kron(u, e0), b = linalg::kron(u_perp, e1);
  const CVector g = linalg::kron(u_perp, e0), h = linalg::kron(u, e1);
  const Complex phase = std::polar(1.0, pr.alpha);
  for (std::size_t i = 0; i < 4; ++i) {
    psi[i] = std::sqrt(pr.s) * a[i] + std::sqrt(1 - pr.s) * b[i];
    phi[i] = std::sqrt(r) * g[i] + phase * std::sqrt(1 - r) * h[i];
  }
  HermitianMatrix f =
      0.5 * (1 + pr.q) * HermitianMatrix::projector(psi) + 0.5 * (1 - pr.q) * HermitianMatrix::projector(phi);
  return {ChoiOperator(2, 2, std::move(f)), r, std::move(psi), std::move(phi)};
}

double rank2_lambda_G(double p, const Rank2ChannelParams& params) {
  const double b = erasure_boundariness(p);
  const HermitianMatrix g = (1.0 / (1.0 - b)) * (erasure_choi(p).matrix() - b * rank2_extremal_choi(params).f.matrix());
  return linalg::min_eigenvalue(g);
}

Rank2Grid Rank2Grid::defaults() {
  auto lin = [](double lo, double hi, std::size_t n, std::vector<double> extra = {}) {
    return sampling::GridAxis{lo, hi, n, std::move(extra)}.values();
  };
  Rank2Grid g;
  g.q = lin(0.0, 0.95, 20, {0.999});
  g.s = lin(0.55, 1.0, 10);
  g.theta = lin(0.0, std::numbers::pi / 2, 5);
  g.alpha = lin(0.0, 1.5 * std::numbers::pi, 4);
  g.beta = g.alpha;
  g.gamma = g.alpha;
  return g;
}

Rank2Grid Rank2Grid::from_config(const sampling::ScanConfig& cfg) {
  Rank2Grid g = defaults();
  g.q = axis_or(cfg, "q", g.q);
  g.s = axis_or(cfg, "s", g.s);
  g.alpha = axis_or(cfg, "alpha", g.alpha);
  g.beta = axis_or(cfg, "beta", g.beta);
  g.gamma = axis_or(cfg, "gamma", g.gamma);
  g.theta = axis_or(cfg, "theta", g.theta);
  return g;
}

std::vector<Rank2ChannelParams> Rank2Grid::points() const {
  std::vector<Rank2ChannelParams> out;
  for (double q : this->q) {
    const double s_max = 1.0 / (1.0 + q);
    std::vector<double> svals;
    for (double s : this->s)
      if (s > 0.5 && s <= s_max + 1e-12) svals.push_back(std::min(s, s_max));
    svals.push_back(s_max);
    std::sort(svals.begin(), svals.end());
    svals.erase(std::unique(svals.begin(), svals.end(), [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
                svals.end());
    for (double s : svals)
      for (double a : alpha)
        for (double b : beta)
          for (double c : gamma)
            for (double t : theta) out.push_back({q, s, a, b, c, t});
  }
  return out;
}

Rank2ScanResult rank2_scan(double p, const Rank2Grid& grid, std::ostream* csv) {
  erasure_boundariness(p);
  const std::vector<Rank2ChannelParams> pts = grid.points();
  if (pts.empty()) throw InputError("rank-2 grid is empty");
  std::vector<double> lam(pts.size());
  sampling::parallel_for(pts.size(), [&](std::size_t i) { lam[i] = rank2_lambda_G(p, pts[i]); });

  const std::size_t best = static_cast<std::size_t>(std::min_element(lam.begin(), lam.end()) - lam.begin());
  if (csv) {
    *csv << "q,s,alpha,beta,gamma,theta,lambda_G\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& pr = pts[i];
      *csv << fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", pr.q, pr.s, pr.alpha, pr.beta,
                          pr.gamma, pr.theta, lam[i]);
    }
  }
  if (lam[best] < -1e-9)
    throw ClaimViolation(fmt::format("rank-2 scan: lambda_G = {:.12g} < 0 at q={}, s={}, theta={}", lam[best],
                                     pts[best].q, pts[best].s, pts[best].theta));
  return {lam[best], pts[best], pts.size()};
}

std::pair<double, double> rank2_envelope(double p, double q) {
  Rank2ChannelParams pr;
  pr.q = q;
  pr.s = 1.0 / (1.0 + q);
  pr.theta = 0.0;
  const double at_zero = rank2_lambda_G(p, pr);
  pr.theta = std::numbers::pi / 2;
  return {at_zero, rank2_lambda_G(p, pr)};
}

double rank2_case1_bound(double p, double c) {
  check_erasure_p(p, "rank2_case1_bound");
  if (!(c > 0.0 && c <= 0.5)) throw InputError(fmt::format("rank2_case1_bound: c = {} outside (0, 1/2]", c));
  const double bound = p / (2 * c);
  if (!(bound > p * (1 - p)))
    throw ClaimViolation(fmt::format("case-1 bound {} does not exceed p(1-p) = {}", bound, p * (1 - p)));
  return bound;
}

std::vector<Matrix> random_kraus(sampling::RandomStream& rng, std::size_t d_in, std::size_t d_out,
                                 std::size_t n_kraus) {
  if (d_in == 0 || d_out == 0 || n_kraus == 0) throw InputError("random_kraus: dimensions must be positive");
  if (n_kraus * d_out < d_in) throw InputError("random_kraus: n_kraus * d_out must be at least d_in");
  const Matrix v = random::haar_isometry(rng, n_kraus * d_out, d_in);
  std::vector<Matrix> ops;
  for (std::size_t n = 0; n < n_kraus; ++n) {
    Matrix k(d_out, d_in);
    for (std::size_t a = 0; a < d_out; ++a)
      for (std::size_t j = 0; j < d_in; ++j) k(a, j) = v(n * d_out + a, j);
    ops.push_back(std::move(k));
  }
  return ops;
}

}  // namespace boundariness::channels
