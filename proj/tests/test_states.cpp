#include <gtest/gtest.h>

#include "boundariness/errors.hpp"
#include "boundariness/states.hpp"
#include "test_util.hpp"

using namespace boundariness;
using states::DensityMatrix;
using testutil::diag;

TEST(DensityMatrix, Validation) {
  EXPECT_THROW(DensityMatrix(diag({0.5, 0.6})), InputError);
  EXPECT_THROW(DensityMatrix(diag({1.2, -0.2})), InputError);
  EXPECT_NO_THROW(DensityMatrix(diag({1.0, 0.0})));
}

TEST(StateBoundariness, Examples) {
  EXPECT_NEAR(states::state_boundariness(DensityMatrix(diag({0.5, 0.5}))).b, 0.5, 1e-15);
  EXPECT_NEAR(states::state_boundariness(DensityMatrix(diag({0.7, 0.2, 0.1}))).b, 0.1, 1e-15);
  auto rng = testutil::stream(41, "pure");
  const DensityMatrix pure(linalg::HermitianMatrix::projector(random::random_pure_state(rng, 3)));
  EXPECT_NEAR(states::state_boundariness(pure).b, 0.0, 1e-12);
  EXPECT_EQ(states::state_boundariness(DensityMatrix(diag({1.0}))).b, 0.0);
}

TEST(StateBoundariness, CertificateIsValid) {
  auto rng = testutil::stream(42, "cert");
  for (std::size_t d : {2, 3, 4}) {
    for (int rep = 0; rep < 10; ++rep) {
      const DensityMatrix rho = states::random_state(rng, d);
      const auto r = states::state_boundariness(rho);
      EXPECT_NEAR(r.b, linalg::min_eigenvalue(rho.matrix()), 1e-12);
      EXPECT_LE(r.certificate.residual, 1e-10);
      EXPECT_LE(r.b, 1.0 / static_cast<double>(d) + 1e-12);
      const DensityMatrix z(r.certificate.z);
      const DensityMatrix x(r.certificate.x);
      EXPECT_TRUE(states::state_is_boundary(z, 1e-8));
      EXPECT_NEAR(linalg::max_eigenvalue(x.matrix()), 1.0, 1e-12);
    }
  }
}

TEST(StateBoundariness, UnitaryInvariantAndMixingMonotone) {
  auto rng = testutil::stream(43, "invariance");
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t d = 2 + rep % 3;
    const DensityMatrix rho = states::random_state(rng, d);
    const DensityMatrix rotated(linalg::congruence(random::haar_unitary(rng, d), rho.matrix()));
    EXPECT_NEAR(states::state_boundariness(rho).b, states::state_boundariness(rotated).b, 1e-10);
    const double eps = 0.05;
    const DensityMatrix mixed((1 - eps) * rho.matrix() + (eps / d) * linalg::HermitianMatrix::identity(d));
    EXPECT_GE(states::state_boundariness(mixed).b, states::state_boundariness(rho).b - 1e-15);
  }
}

TEST(StateBoundary, Examples) {
  EXPECT_TRUE(states::state_is_boundary(DensityMatrix(diag({0.5, 0.5, 0.0})), 1e-9));
  EXPECT_FALSE(states::state_is_boundary(DensityMatrix(diag({0.5, 0.5})), 1e-9));
  EXPECT_TRUE(states::state_is_boundary(DensityMatrix(diag({1.0, 0.0})), 1e-9));
}

TEST(StateBounds, Examples) {
  auto [lo, hi] = states::state_bounds_check(DensityMatrix(diag({0.5, 0.5})));
  EXPECT_NEAR(lo, 0.5, 1e-15);
  EXPECT_NEAR(hi, 0.5, 1e-15);
  std::tie(lo, hi) = states::state_bounds_check(DensityMatrix(diag({0.9, 0.1})));
  EXPECT_NEAR(lo, 0.1, 1e-15);
  EXPECT_NEAR(hi, 0.9, 1e-15);
  std::tie(lo, hi) = states::state_bounds_check(DensityMatrix(diag({1.0, 0.0})));
  EXPECT_NEAR(lo, 0.0, 1e-15);
  EXPECT_NEAR(hi, 1.0, 1e-15);
}

TEST(StateOracle, ScanAgreesWithClosedForm) {
  auto rng = testutil::stream(44, "oracle");
  const auto set = states::state_oracle_set(3);
  convex::ScanOptions opts;
  opts.n_samples = 2000;
  for (int rep = 0; rep < 3; ++rep) {
    const DensityMatrix rho = states::random_state(rng, 3);
    const double lam = linalg::min_eigenvalue(rho.matrix());
    const auto r = convex::remark1_scan(set, linalg::to_real_coordinates(rho.matrix()), opts);
    EXPECT_GE(r.b_upper, lam - 1e-9);
    EXPECT_LE(r.b_upper, lam + 2e-2);
  }
  const auto diag_scan =
      convex::remark1_scan(set, linalg::to_real_coordinates(diag({0.7, 0.2, 0.1})), opts);
  EXPECT_NEAR(diag_scan.b_upper, 0.1, 2e-2);
}

TEST(StateOracle, SamplesAreMembers) {
  const auto set = states::state_oracle_set(2);
  for (std::uint64_t i = 0; i < 20; ++i) EXPECT_TRUE(set.membership(set.sample_extremal(9, i), 1e-9));
}
