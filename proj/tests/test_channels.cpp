#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "boundariness/channels.hpp"
#include "boundariness/errors.hpp"
#include "test_util.hpp"

using namespace boundariness;
using channels::ChoiOperator;
using linalg::HermitianMatrix;
using linalg::Matrix;
using testutil::diag;

namespace {

ChoiOperator depolarizing() { return ChoiOperator(2, 2, 0.25 * HermitianMatrix::identity(4)); }

std::size_t numeric_rank(const HermitianMatrix& m, double tol = 1e-9) {
  std::size_t r = 0;
  for (double v : linalg::eigvalsh(m)) r += v > tol;
  return r;
}

// Interior qubit channel from a random 4-Kraus channel mixed with a little depolarizing noise.
ChoiOperator random_interior_channel(testutil::RandomStream& rng) {
  const auto kraus = channels::random_kraus(rng, 2, 2, 4);
  const ChoiOperator e = channels::choi_from_kraus(kraus, 2, 2);
  return ChoiOperator(2, 2, 0.9 * e.matrix() + 0.1 * depolarizing().matrix());
}

}  // namespace

TEST(Choi, Validation) {
  EXPECT_THROW(ChoiOperator(2, 2, 0.5 * HermitianMatrix::identity(4)), InputError);
  EXPECT_THROW(ChoiOperator(2, 2, diag({0.5, 0.0, 0.5, 0.0})), InputError);  // tr_out != I/2
  EXPECT_NO_THROW(ChoiOperator(2, 2, diag({0.5, 0.5, 0.0, 0.0})));          // replaces every input by |0>
  EXPECT_THROW(ChoiOperator(2, 3, 0.25 * HermitianMatrix::identity(4)), InputError);
  EXPECT_NO_THROW(depolarizing());
}

TEST(Choi, FromKrausExamples) {
  const Matrix id = Matrix::identity(2);
  const Matrix ops[] = {id};
  const ChoiOperator e = channels::choi_from_kraus(ops, 2, 2);
  const auto psi = channels::maximally_entangled(2);
  EXPECT_LE((e.matrix().matrix() - HermitianMatrix::projector(psi).matrix()).max_abs(), 1e-15);

  const double p = 0.3;
  const auto kraus = channels::erasure_kraus(p);
  EXPECT_LE((channels::choi_from_kraus(kraus, 2, 2).matrix().matrix() - channels::erasure_choi(p).matrix().matrix())
                .max_abs(),
            1e-15);

  auto rng = testutil::stream(61, "unitary-choi");
  const auto ev = linalg::eigvalsh(channels::choi_from_unitary(random::haar_unitary(rng, 2)).matrix());
  EXPECT_NEAR(ev[3], 1.0, 1e-12);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(ev[k], 0.0, 1e-12);

  const Matrix half[] = {0.5 * id};
  EXPECT_THROW(channels::choi_from_kraus(half, 2, 2), InputError);
}

TEST(Choi, RankCountsIndependentKraus) {
  auto rng = testutil::stream(62, "kraus-rank");
  for (std::size_t n : {1, 2, 3}) {
    const auto kraus = channels::random_kraus(rng, 2, 2, n);
    EXPECT_EQ(numeric_rank(channels::choi_from_kraus(kraus, 2, 2).matrix()), n);
  }
  const auto rect = channels::random_kraus(rng, 2, 3, 2);
  const ChoiOperator e = channels::choi_from_kraus(rect, 2, 3);
  EXPECT_EQ(e.matrix().dim(), 6u);
}

TEST(Channel, BoundaryExamples) {
  auto rng = testutil::stream(63, "boundary");
  EXPECT_TRUE(channels::channel_is_boundary(channels::choi_from_unitary(random::haar_unitary(rng, 2)), 1e-9));
  EXPECT_FALSE(channels::channel_is_boundary(channels::erasure_choi(0.25), 1e-9));
  EXPECT_FALSE(channels::channel_is_boundary(depolarizing(), 1e-9));
}

TEST(Erasure, ChoiAndBoundariness) {
  const auto e = channels::erasure_choi(0.25);
  EXPECT_LE((e.matrix().matrix() - diag({0.125, 0.125, 0.375, 0.375}).matrix()).max_abs(), 1e-16);
  EXPECT_NEAR(linalg::min_eigenvalue(e.matrix()), 0.125, 1e-15);
  EXPECT_NEAR(channels::erasure_boundariness(0.25), 0.1875, 1e-15);
  EXPECT_NEAR(channels::erasure_boundariness(0.4), 0.24, 1e-15);
  EXPECT_LT(channels::erasure_boundariness(1e-6), 1e-5);
  for (double bad : {0.0, 0.5, -0.1, 0.7}) {
    EXPECT_THROW(channels::erasure_choi(bad), InputError);
    EXPECT_THROW(channels::erasure_boundariness(bad), InputError);
  }
}

TEST(Erasure, ClosedFormEigenvaluesMatchDenseSolver) {
  auto rng = testutil::stream(64, "erasure-eigs");
  for (int rep = 0; rep < 40; ++rep) {
    const double p = 0.01 + 0.48 * rng.uniform(), t = 0.99 * rng.uniform();
    const ChoiOperator f = channels::choi_from_unitary(random::haar_unitary(rng, 2));
    auto closed = channels::erasure_G_eigenvalues(p, t);
    std::sort(closed.begin(), closed.end());
    const auto dense = linalg::eigvalsh(2.0 * (channels::erasure_choi(p).matrix() - t * f.matrix()));
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(closed[k], dense[k], 1e-9) << p << " " << t;
  }
}

TEST(Erasure, ClosedFormSpecialValues) {
  const double p = 0.25;
  auto at_b = channels::erasure_G_eigenvalues(p, p * (1 - p));
  EXPECT_NEAR(*std::min_element(at_b.begin(), at_b.end()), 0.0, 1e-12);
  auto at0 = channels::erasure_G_eigenvalues(p, 0.0);
  std::sort(at0.begin(), at0.end());
  EXPECT_NEAR(at0[0], p, 1e-15);
  EXPECT_NEAR(at0[1], p, 1e-15);
  EXPECT_NEAR(at0[2], 1 - p, 1e-15);
  EXPECT_NEAR(at0[3], 1 - p, 1e-15);
  for (double v : channels::erasure_G_eigenvalues(p, 0.18)) EXPECT_GT(v, 0.0);
  EXPECT_THROW(channels::erasure_G_eigenvalues(p, 1.0), InputError);
}

TEST(Erasure, PsdJustBelowBoundariness) {
  auto rng = testutil::stream(65, "psd-below");
  const ChoiOperator f = channels::choi_from_unitary(random::haar_unitary(rng, 2));
  EXPECT_TRUE(linalg::is_psd(channels::erasure_choi(0.25).matrix() - 0.18 * f.matrix(), 1e-9));
  EXPECT_FALSE(linalg::is_psd(channels::erasure_choi(0.25).matrix() - 0.19 * f.matrix(), 1e-9));
}

TEST(ChannelScan, ErasureDepolarizingAndUnitary) {
  const auto r = channels::channel_scan_boundariness(channels::erasure_choi(0.25), 100, false, 1);
  EXPECT_NEAR(r.b_upper, 0.1875, 1e-3);
  EXPECT_NEAR(r.lambda_min, 0.125, 1e-15);
  EXPECT_LE(r.uncertainty, 1e-3);
  EXPECT_NEAR(channels::channel_scan_boundariness(depolarizing(), 100, false, 2).b_upper, 0.25, 1e-3);
  auto rng = testutil::stream(66, "unitary-scan");
  const auto u = channels::choi_from_unitary(random::haar_unitary(rng, 2));
  EXPECT_NEAR(channels::channel_scan_boundariness(u, 50, false, 3).b_upper, 0.0, 1e-9);
}

TEST(ChannelScan, ErasureThresholdIsTheSameForEveryUnitary) {
  const auto e = channels::erasure_choi(0.3);
  const auto set = channels::channel_oracle_set(2, 2, 20, false);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto f = linalg::from_real_coordinates(set.sample_extremal(7, i), 4);
    // Per-sample threshold by bisection on PSD of E - tF.
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (linalg::min_eigenvalue(e.matrix() - mid * f) >= 0.0 ? lo : hi) = mid;
    }
    EXPECT_NEAR(lo, 0.3 * 0.7, 1e-9) << i;
  }
}

TEST(ChannelScan, NeverBelowLambdaMin) {
  auto rng = testutil::stream(67, "scan-lower");
  for (int rep = 0; rep < 5; ++rep) {
    const ChoiOperator e = random_interior_channel(rng);
    const auto r = channels::channel_scan_boundariness(e, 100, true, 4);
    EXPECT_GE(r.b_upper, r.lambda_min - r.uncertainty - 1e-9);
  }
}

TEST(MinEigenvalueWitness, UnitaryWitnessOnErasure) {
  const auto e = channels::erasure_choi(0.25);
  const auto phi = channels::maximally_entangled(2);
  const double t = channels::prop6_unitary_witness(e, phi);
  EXPECT_GT(t, 0.125 + 1e-12);
  EXPECT_NEAR(t, 0.1875, 1e-12);  // alpha = 1/2 here
  EXPECT_TRUE(linalg::is_psd(e.matrix() - t * HermitianMatrix::projector(phi), 1e-9));
}

TEST(MinEigenvalueWitness, UnitaryWitnessLimits) {
  const auto phi = channels::maximally_entangled(2);
  // alpha = 0: the minimal eigenspace span{|01>, |10>} is orthogonal to phi, so t = l2.
  const ChoiOperator e(2, 2, diag({0.375, 0.125, 0.125, 0.375}));
  EXPECT_NEAR(channels::prop6_unitary_witness(e, phi), 0.375, 1e-12);
  // alpha = 1: phi spans the minimal eigenspace.
  HermitianMatrix m1 = 0.3 * HermitianMatrix::identity(4) - 0.2 * HermitianMatrix::projector(phi);
  m1 *= 1.0 / m1.trace();
  EXPECT_THROW(channels::prop6_unitary_witness(ChoiOperator(2, 2, m1), phi), channels::BoundNotImprovable);
  EXPECT_THROW(channels::prop6_unitary_witness(depolarizing(), phi), channels::BoundNotImprovable);
  const linalg::CVector product = {1.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(channels::prop6_unitary_witness(channels::erasure_choi(0.25), product), InputError);
}

TEST(MinEigenvalueWitness, NonUnitaryWitness) {
  const auto e = channels::erasure_choi(0.25);
  EXPECT_NEAR(channels::prop6_nonunitary_witness(e, depolarizing()), 4 * 0.125, 1e-12);
  auto rng = testutil::stream(68, "nonunitary");
  for (int rep = 0; rep < 10; ++rep) {
    const auto kraus = channels::random_kraus(rng, 2, 2, 2);
    const ChoiOperator f = channels::choi_from_kraus(kraus, 2, 2);
    const double t = channels::prop6_nonunitary_witness(e, f);
    EXPECT_GT(t, 0.125 + 1e-12);
    EXPECT_TRUE(linalg::is_psd(e.matrix() - t * f.matrix(), 1e-9));
  }
  const auto u = channels::choi_from_unitary(random::haar_unitary(rng, 2));
  EXPECT_THROW(channels::prop6_nonunitary_witness(e, u), InputError);
}

TEST(Rank2, ConstructionInvariants) {
  auto rng = testutil::stream(69, "rank2");
  for (int rep = 0; rep < 100; ++rep) {
    channels::Rank2ChannelParams pr;
    pr.q = 0.999 * rng.uniform();
    const double s_max = 1.0 / (1.0 + pr.q);
    pr.s = 0.5 + (s_max - 0.5) * (1.0 - rng.uniform());
    pr.alpha = 2 * std::numbers::pi * rng.uniform();
    pr.beta = 2 * std::numbers::pi * rng.uniform();
    pr.gamma = 2 * std::numbers::pi * rng.uniform();
    pr.theta = std::numbers::pi * rng.uniform();
    const auto r = channels::rank2_extremal_choi(pr);
    EXPECT_LT(std::abs(linalg::inner(r.psi, r.phi)), 1e-10);
    EXPECT_LE((linalg::partial_trace_first(r.f.matrix(), 2).matrix() - 0.5 * Matrix::identity(2)).max_abs(), 1e-9);
    const auto ev = linalg::eigvalsh(r.f.matrix());
    EXPECT_NEAR(ev[0], 0.0, 1e-10);
    EXPECT_NEAR(ev[1], 0.0, 1e-10);
    EXPECT_NEAR(ev[2], 0.5 * (1 - pr.q), 1e-10);
    EXPECT_NEAR(ev[3], 0.5 * (1 + pr.q), 1e-10);
  }
}

TEST(Rank2, Examples) {
  channels::Rank2ChannelParams pr;
  pr.q = 0.0;
  pr.s = 1.0;
  const auto r = channels::rank2_extremal_choi(pr);
  EXPECT_NEAR(r.r, 0.0, 1e-15);
  const auto ev = linalg::eigvalsh(r.f.matrix());
  EXPECT_NEAR(ev[2], 0.5, 1e-12);
  EXPECT_NEAR(ev[3], 0.5, 1e-12);

  pr.q = 1.0 - 1e-9;
  pr.s = 1.0 / (1.0 + pr.q);
  EXPECT_NEAR(linalg::max_eigenvalue(channels::rank2_extremal_choi(pr).f.matrix()), 1.0, 1e-8);

  pr.q = 0.5;
  pr.s = 0.9;  // exceeds 1/(1+q)
  EXPECT_THROW(channels::rank2_extremal_choi(pr), InputError);
  pr.s = 0.5;
  EXPECT_THROW(channels::rank2_extremal_choi(pr), InputError);
}

TEST(Rank2, LowerEnvelopeBoundsEveryParameterChoice) {
  const double p = 0.25;
  auto rng = testutil::stream(70, "envelope");
  for (double q : {0.0, 0.3, 0.6, 0.9}) {
    const auto [lo, hi] = channels::rank2_envelope(p, q);
    EXPECT_LT(lo, hi);
    for (int rep = 0; rep < 200; ++rep) {
      channels::Rank2ChannelParams pr;
      pr.q = q;
      pr.s = 0.5 + (1.0 / (1.0 + q) - 0.5) * (1.0 - rng.uniform());
      pr.alpha = 2 * std::numbers::pi * rng.uniform();
      pr.beta = 2 * std::numbers::pi * rng.uniform();
      pr.gamma = 2 * std::numbers::pi * rng.uniform();
      pr.theta = std::numbers::pi * rng.uniform();
      EXPECT_GE(channels::rank2_lambda_G(p, pr), lo - 1e-9) << q;
    }
    // On the slice the phases do not matter.
    channels::Rank2ChannelParams pr;
    pr.q = q;
    pr.s = 1.0 / (1.0 + q);
    const double base = channels::rank2_lambda_G(p, pr);
    EXPECT_NEAR(base, lo, 1e-12);
    pr.alpha = 1.0;
    pr.beta = 2.0;
    pr.gamma = 3.0;
    EXPECT_NEAR(channels::rank2_lambda_G(p, pr), base, 1e-10);
  }
}

TEST(Rank2, SliceMaximumSitsAtThetaPi) {
  // The theta = pi/2 value is not the largest one on the slice.
  for (double q : {0.0, 0.3, 0.6, 0.9}) {
    channels::Rank2ChannelParams pr;
    pr.q = q;
    pr.s = 1.0 / (1.0 + q);
    double best = -1.0, best_theta = 0.0;
    for (int k = 0; k <= 180; ++k) {
      pr.theta = std::numbers::pi * k / 180.0;
      const double v = channels::rank2_lambda_G(0.25, pr);
      if (v > best + 1e-15) {
        best = v;
        best_theta = pr.theta;
      }
    }
    EXPECT_NEAR(best_theta, std::numbers::pi, 1e-12) << q;
    EXPECT_GT(best, channels::rank2_envelope(0.25, q).second) << q;
  }
}

TEST(Rank2, LowerEnvelopeVanishesTowardUnitary) {
  const auto [lo, hi] = channels::rank2_envelope(0.25, 1.0 - 1e-3);
  EXPECT_LT(lo, 1e-2);
  EXPECT_GE(lo, -1e-9);
  EXPECT_GT(hi, lo);
}

TEST(Rank2, ScanOnSmallGridWritesRowsInOrder) {
  channels::Rank2Grid grid;
  grid.q = {0.0, 0.5};
  grid.s = {0.6, 1.0};
  grid.alpha = {0.0};
  grid.beta = {0.0};
  grid.gamma = {0.0, 1.0};
  grid.theta = {0.0, 1.0};
  std::ostringstream csv;
  const auto r = channels::rank2_scan(0.25, grid, &csv);
  // q = 0: s in {0.6, 1.0}; q = 0.5: s in {0.6, 2/3}.
  EXPECT_EQ(r.n_points, 16u);
  EXPECT_GE(r.min_lambda_G, -1e-9);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "q,s,alpha,beta,gamma,theta,lambda_G");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 16u);
}

TEST(Rank2, DefaultGridIsLargeEnough) {
  EXPECT_GE(channels::Rank2Grid::defaults().points().size(), 10000u);
  sampling::ScanConfig cfg;
  cfg.grid["theta"] = sampling::GridAxis{0.0, 1.0, 2, {}};
  EXPECT_EQ(channels::Rank2Grid::from_config(cfg).theta, (std::vector<double>{0.0, 1.0}));
}

TEST(Rank2, CaseOneBound) {
  EXPECT_NEAR(channels::rank2_case1_bound(0.25, 0.5), 0.25, 1e-15);
  EXPECT_NEAR(channels::rank2_case1_bound(0.25, 0.25), 0.5, 1e-15);
  for (double p : {0.01, 0.2, 0.49})
    for (double c : {0.01, 0.3, 0.5}) EXPECT_GT(channels::rank2_case1_bound(p, c), p * (1 - p));
  EXPECT_THROW(channels::rank2_case1_bound(0.25, 0.0), InputError);
  EXPECT_THROW(channels::rank2_case1_bound(0.25, 0.6), InputError);
}
