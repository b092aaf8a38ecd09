#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "boundariness/convex.hpp"
#include "boundariness/errors.hpp"
#include "boundariness/linalg.hpp"
#include "boundariness/sampling.hpp"

// Channels are represented by Choi operators E = (channel (x) id)(P+) with
// P+ the projector on (1/sqrt d) sum_j |j>|j>. Tensor order is
// output (x) input, so tr over the first factor gives I/d_in.
namespace boundariness::channels {

using linalg::HermitianMatrix;
using linalg::Matrix;

class ChoiOperator {
 public:
  /// PSD at 1e-9, unit trace within 1e-10, tr_out = I/d_in within 1e-9.
  ChoiOperator(std::size_t d_in, std::size_t d_out, HermitianMatrix mat, double psd_tol = linalg::kPsdTol);

  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }
  const HermitianMatrix& matrix() const { return mat_; }

 private:
  std::size_t d_in_;
  std::size_t d_out_;
  HermitianMatrix mat_;
};

/// Kraus operators are d_out x d_in; throws InputError unless
/// sum K^dagger K = I within 1e-9.
ChoiOperator choi_from_kraus(std::span<const Matrix> kraus, std::size_t d_in, std::size_t d_out);
ChoiOperator choi_from_unitary(const Matrix& u);

/// (1/sqrt d) sum_j |j>|j>.
linalg::CVector maximally_entangled(std::size_t d);

bool channel_is_boundary(const ChoiOperator& e, double tol);

/// Qubit erasure channel: every input goes to xi_p = p|0><0| + (1-p)|1><1|.
/// Both throw InputError unless 0 < p < 1/2.
ChoiOperator erasure_choi(double p);
std::vector<Matrix> erasure_kraus(double p);

/// Closed-form spectrum {p, 1-p, (1-2t-sqrt D)/2, (1-2t+sqrt D)/2},
/// D = (1-2p)^2 + 4t^2, of 2 (E_p - t F) for any unitary Choi F (that is,
/// d (1-t) G in this normalization).
std::array<double, 4> erasure_G_eigenvalues(double p, double t);

/// p(1-p), checked to exceed lambda_min = p/2.
double erasure_boundariness(double p);

/// Channel Choi operators as a convex oracle set over real coordinates.
/// Samples with index < n_unitaries are Haar unitary channels; with
/// include_rank2 (qubit only) the next n_unitaries are random rank-2
/// extremal channels.
convex::ConvexOracleSet channel_oracle_set(std::size_t d_in, std::size_t d_out, std::size_t n_unitaries,
                                           bool include_rank2);

struct ChannelScanResult {
  double b_upper;
  ChoiOperator worst_f;
  std::size_t worst_index;
  double lambda_min;
  double resolution;
  double sampling_gap;
  double uncertainty;
};

/// Bisection over t with feasibility "E - t F is PSD for every sampled
/// extremal F". Always an upper bound on b(E) up to the resolution; for
/// channels outside the erasure family this is not known to be tight.
ChannelScanResult channel_scan_boundariness(const ChoiOperator& e, std::size_t n_unitaries, bool include_rank2,
                                            std::uint64_t seed, double psd_tol = linalg::kPsdTol,
                                            int bisect_depth = 40);

/// Raised when the minimal eigenspace of E contains the requested
/// maximally entangled vector, so a decomposition with t = lambda_min exists.
class BoundNotImprovable : public InputError {
 public:
  using InputError::InputError;
};

/// t = l1 l2 / (l1 + (l2 - l1) alpha), alpha = ||P_1 phi||^2, for the
/// unitary channel F = |phi><phi|. Requires an interior E and a unit-norm
/// maximally entangled phi; E - t F is verified PSD before returning.
double prop6_unitary_witness(const ChoiOperator& e, std::span<const linalg::Complex> phi);

/// t = lambda_min(E) / mu_max(F) for a non-unitary F (mu_max < 1 - 1e-9);
/// E - t F is verified PSD before returning.
double prop6_nonunitary_witness(const ChoiOperator& e, const ChoiOperator& f);

/// Parameters of a rank-two extremal qubit channel with |v> = |0>.
struct Rank2ChannelParams {
  double q = 0.0;      // [0, 1)
  double s = 1.0;      // (1/2, 1], s <= 1/(1+q)
  double alpha = 0.0;  // [0, 2pi]
  double beta = 0.0;   // [0, 2pi]
  double gamma = 0.0;  // [0, 2pi]
  double theta = 0.0;  // [0, pi]
};

struct Rank2Choi {
  ChoiOperator f;
  double r;
  linalg::CVector psi;
  linalg::CVector phi;
};

/// F = (1+q)/2 |psi><psi| + (1-q)/2 |phi><phi| with
///   psi = sqrt(s) u(x)0 + sqrt(1-s) u_perp(x)1,
///   phi = sqrt(r) u_perp(x)0 + e^{i alpha} sqrt(1-r) u(x)1,
///   r = (1 - (1+q) s) / (1 - q),
///   u = cos(theta/2)|0> + e^{i beta} sin(theta/2)|1>,
///   u_perp = e^{i gamma} sin(theta/2)|0> - e^{i(gamma+beta)} cos(theta/2)|1>.
Rank2Choi rank2_extremal_choi(const Rank2ChannelParams& params);

/// lambda_min of G = (E_p - p(1-p) F) / (1 - p(1-p)).
double rank2_lambda_G(double p, const Rank2ChannelParams& params);

struct Rank2Grid {
  std::vector<double> q;
  std::vector<double> s;  // candidates; kept when 1/2 < s <= 1/(1+q); 1/(1+q) is always added
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> gamma;
  std::vector<double> theta;

  static Rank2Grid defaults();
  /// Axes named q, s, alpha, beta, gamma, theta in cfg.grid replace the defaults.
  static Rank2Grid from_config(const sampling::ScanConfig& cfg);

  /// Valid grid points in CSV order (q, s, alpha, beta, gamma, theta).
  std::vector<Rank2ChannelParams> points() const;
};

struct Rank2ScanResult {
  double min_lambda_G;
  Rank2ChannelParams argmin;
  std::size_t n_points;
};

/// Evaluates lambda_G on every grid point (in parallel), writes
/// "q,s,alpha,beta,gamma,theta,lambda_G" rows in grid order to csv when
/// given, and throws ClaimViolation if the minimum drops below -1e-9.
Rank2ScanResult rank2_scan(double p, const Rank2Grid& grid, std::ostream* csv = nullptr);

/// lambda_G on the slice s = 1/(1+q) at theta = 0 and theta = pi/2
/// (alpha = beta = gamma = 0).
std::pair<double, double> rank2_envelope(double p, double q);

/// p / (2c) for c = <phi|F|phi> in (0, 1/2]; checked to exceed p(1-p).
double rank2_case1_bound(double p, double c);

/// Kraus operators of a random channel from a Haar isometry C^d_in -> C^(n_kraus d_out).
std::vector<Matrix> random_kraus(sampling::RandomStream& rng, std::size_t d_in, std::size_t d_out,
                                 std::size_t n_kraus);

}  // namespace boundariness::channels
