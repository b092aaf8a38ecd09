#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "boundariness/errors.hpp"
#include "boundariness/linalg.hpp"
#include "boundariness/random.hpp"
#include "test_util.hpp"

using namespace boundariness;
using linalg::HermitianMatrix;
using linalg::Matrix;
using testutil::Complex;
using testutil::diag;

namespace {

Eigen::MatrixXcd to_eigen(const Matrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

Matrix reconstruct(const linalg::EigenDecomposition& e) {
  const std::size_t d = e.eigenvalues.size();
  Matrix lam(d, d);
  for (std::size_t k = 0; k < d; ++k) lam(k, k) = e.eigenvalues[k];
  return linalg::matmul(linalg::matmul(e.eigenvectors, lam), e.eigenvectors.adjoint());
}

}  // namespace

TEST(Hermitian, ConstructionSymmetrizesTinyAsymmetry) {
  Matrix m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = Complex(0.5, 0.25);
  m(1, 0) = Complex(0.5, -0.25 + 1e-14);
  const HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(Hermitian, RejectsNonHermitianAndNonFinite) {
  Matrix m(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(HermitianMatrix{m}, InputError);
  Matrix n(2, 2);
  n(0, 0) = std::nan("");
  EXPECT_THROW(HermitianMatrix{n}, InputError);
  EXPECT_THROW(HermitianMatrix{Matrix(2, 3)}, InputError);
}

TEST(Eigh, IdentityAndDiagonal) {
  const auto e = linalg::eigh(HermitianMatrix::identity(3));
  for (double v : e.eigenvalues) EXPECT_NEAR(v, 1.0, 1e-15);
  const auto d = linalg::eigvalsh(diag({0.7, 0.2, 0.1}));
  EXPECT_NEAR(d[0], 0.1, 1e-15);
  EXPECT_NEAR(d[1], 0.2, 1e-15);
  EXPECT_NEAR(d[2], 0.7, 1e-15);
}

TEST(Eigh, ReconstructsAndIsOrthonormal) {
  auto rng = testutil::stream(3, "eigh");
  for (std::size_t d : {1, 2, 3, 4, 6, 8, 16}) {
    for (int rep = 0; rep < 5; ++rep) {
      const HermitianMatrix m = testutil::random_hermitian(rng, d);
      const auto e = linalg::eigh(m);
      EXPECT_TRUE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
      EXPECT_LE((reconstruct(e) - m.matrix()).frobenius_norm(), 1e-10 * std::max(1.0, m.matrix().frobenius_norm()));
      const Matrix vtv = linalg::matmul(e.eigenvectors.adjoint(), e.eigenvectors);
      EXPECT_LE((vtv - Matrix::identity(d)).max_abs(), 1e-10);
    }
  }
}

TEST(Eigh, AgreesWithIndependentSolver) {
  auto rng = testutil::stream(4, "eigh-oracle");
  for (std::size_t d : {2, 3, 5, 9, 12}) {
    const HermitianMatrix m = testutil::random_hermitian(rng, d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(m.matrix()));
    const auto ours = linalg::eigvalsh(m);
    for (std::size_t k = 0; k < d; ++k) EXPECT_NEAR(ours[k], oracle.eigenvalues()(k), 1e-10);
  }
}

TEST(Eigh, HandlesDegenerateSpectra) {
  auto rng = testutil::stream(5, "degenerate");
  const Matrix u = random::haar_unitary(rng, 4);
  const HermitianMatrix m = linalg::congruence(u, diag({0.25, 0.25, 0.25, 0.25}));
  const auto e = linalg::eigh(m);
  for (double v : e.eigenvalues) EXPECT_NEAR(v, 0.25, 1e-14);
  const HermitianMatrix m2 = linalg::congruence(u, diag({0.0, 0.0, 0.5, 0.5}));
  EXPECT_LE((reconstruct(linalg::eigh(m2)) - m2.matrix()).max_abs(), 1e-12);
}

TEST(Eigh, SpectrumIsUnitarilyInvariant) {
  auto rng = testutil::stream(6, "invariance");
  for (int rep = 0; rep < 10; ++rep) {
    const HermitianMatrix m = testutil::random_hermitian(rng, 4);
    const HermitianMatrix rotated = linalg::congruence(random::haar_unitary(rng, 4), m);
    const auto a = linalg::eigvalsh(m), b = linalg::eigvalsh(rotated);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(a[k], b[k], 1e-9);
  }
}

TEST(Psd, BasicCasesAndMonotonicity) {
  EXPECT_TRUE(linalg::is_psd(HermitianMatrix::identity(3), 1e-9));
  EXPECT_FALSE(linalg::is_psd(diag({1.0, -0.5}), 1e-9));
  EXPECT_TRUE(linalg::is_psd(diag({1.0, -1e-12}), 1e-9));
  auto rng = testutil::stream(7, "psd");
  for (int rep = 0; rep < 20; ++rep) {
    const HermitianMatrix m = testutil::random_hermitian(rng, 3);
    if (!linalg::is_psd(m)) continue;
    EXPECT_TRUE(linalg::is_psd(m + rng.uniform() * HermitianMatrix::identity(3)));
  }
  // Shifting a random matrix to its minimal eigenvalue lands exactly on the boundary.
  const HermitianMatrix m = testutil::random_hermitian(rng, 4);
  const HermitianMatrix shifted = m - linalg::min_eigenvalue(m) * HermitianMatrix::identity(4);
  EXPECT_TRUE(linalg::is_psd(shifted));
  EXPECT_FALSE(linalg::is_psd(shifted - 1e-6 * HermitianMatrix::identity(4)));
}

TEST(TraceNorm, Examples) {
  EXPECT_EQ(linalg::trace_norm(HermitianMatrix::zeros(3)), 0.0);
  EXPECT_NEAR(linalg::trace_norm(diag({0.8, 0.2}) - diag({0.0, 1.0})), 1.6, 1e-15);
  const HermitianMatrix up = HermitianMatrix::projector(testutil::basis(2, 0));
  const HermitianMatrix down = HermitianMatrix::projector(testutil::basis(2, 1));
  EXPECT_NEAR(linalg::trace_norm(up - down), 2.0, 1e-15);
}

TEST(TraceNorm, EqualsSumOfAbsoluteEigenvalues) {
  auto rng = testutil::stream(8, "trace-norm");
  for (int rep = 0; rep < 10; ++rep) {
    const HermitianMatrix m = testutil::random_hermitian(rng, 5);
    double acc = 0.0;
    for (double v : linalg::eigvalsh(m)) acc += std::abs(v);
    EXPECT_EQ(linalg::trace_norm(m), acc);
  }
}

TEST(Tensor, ExamplesAndActionOracle) {
  EXPECT_LE((linalg::tensor(HermitianMatrix::identity(2), HermitianMatrix::identity(2)).matrix() -
             Matrix::identity(4))
                .max_abs(),
            0.0);
  const double p = 0.3;
  const HermitianMatrix e = linalg::tensor(diag({p, 1 - p}), 0.5 * HermitianMatrix::identity(2));
  EXPECT_LE((e.matrix() - diag({p / 2, p / 2, (1 - p) / 2, (1 - p) / 2}).matrix()).max_abs(), 1e-16);

  auto rng = testutil::stream(9, "tensor");
  const HermitianMatrix a = testutil::random_hermitian(rng, 2), b = testutil::random_hermitian(rng, 3);
  const auto u = random::random_pure_state(rng, 2), v = random::random_pure_state(rng, 3);
  const auto lhs = linalg::matvec(linalg::tensor(a, b).matrix(), linalg::kron(u, v));
  const auto rhs = linalg::kron(linalg::matvec(a.matrix(), u), linalg::matvec(b.matrix(), v));
  for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_LT(std::abs(lhs[i] - rhs[i]), 1e-13);
}

TEST(PartialTrace, Examples) {
  EXPECT_LE((linalg::partial_trace_first(HermitianMatrix::identity(4), 2).matrix() - 2.0 * Matrix::identity(2))
                .max_abs(),
            0.0);
  EXPECT_THROW(linalg::partial_trace_first(HermitianMatrix::identity(6), 4), InputError);
  auto rng = testutil::stream(10, "ptrace");
  const Matrix u = random::haar_unitary(rng, 2);
  linalg::CVector vec_u(u.data().begin(), u.data().end());
  for (auto& z : vec_u) z /= std::sqrt(2.0);
  const HermitianMatrix choi = HermitianMatrix::projector(vec_u);
  EXPECT_LE((linalg::partial_trace_first(choi, 2).matrix() - 0.5 * Matrix::identity(2)).max_abs(), 1e-12);
}

TEST(PartialTrace, OfTensorProduct) {
  auto rng = testutil::stream(12, "ptrace-tensor");
  for (int rep = 0; rep < 5; ++rep) {
    const HermitianMatrix a = testutil::random_hermitian(rng, 2), b = testutil::random_hermitian(rng, 3);
    const HermitianMatrix ab = linalg::tensor(a, b);
    EXPECT_LE((linalg::partial_trace_first(ab, 2).matrix() - (a.trace() * b).matrix()).max_abs(), 1e-12);
    EXPECT_LE((linalg::partial_trace_second(ab, 3).matrix() - (b.trace() * a).matrix()).max_abs(), 1e-12);
    EXPECT_NEAR(linalg::partial_trace_first(ab, 2).trace(), ab.trace(), 1e-12);
  }
}

TEST(RealCoordinates, RoundTripIsIsometric) {
  auto rng = testutil::stream(13, "coords");
  const HermitianMatrix a = testutil::random_hermitian(rng, 3), b = testutil::random_hermitian(rng, 3);
  const auto ca = linalg::to_real_coordinates(a), cb = linalg::to_real_coordinates(b);
  ASSERT_EQ(ca.size(), 9u);
  EXPECT_LE((linalg::from_real_coordinates(ca, 3).matrix() - a.matrix()).max_abs(), 1e-15);
  double dist = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) dist += (ca[i] - cb[i]) * (ca[i] - cb[i]);
  EXPECT_NEAR(std::sqrt(dist), linalg::frobenius_distance(a, b), 1e-12);
}

TEST(Random, HaarUnitaryIsUnitary) {
  auto rng = testutil::stream(14, "haar");
  for (std::size_t d : {1, 2, 3, 4}) {
    const Matrix u = random::haar_unitary(rng, d);
    EXPECT_LE((linalg::matmul(u.adjoint(), u) - Matrix::identity(d)).max_abs(), 1e-13);
  }
  const auto rho = random::random_density_matrix(rng, 3, 2);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-13);
  EXPECT_NEAR(linalg::min_eigenvalue(rho), 0.0, 1e-12);
}
