#include <gtest/gtest.h>

#include <vector>

#include "boundariness/kernels.hpp"
#include "test_util.hpp"

namespace k = boundariness::kernels;
using testutil::Complex;

namespace {

std::vector<Complex> random_row(testutil::RandomStream& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& z : v) z = {rng.gaussian(), rng.gaussian()};
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Kernels, ScalarTableIsAlwaysAvailable) {
  EXPECT_STREQ(k::scalar_table().name, "scalar");
  EXPECT_NE(k::table_by_name("scalar"), nullptr);
  EXPECT_EQ(k::table_by_name("neon"), nullptr);
}

TEST(Kernels, ScalarMatchesHandComputation) {
  const std::vector<Complex> x = {{1, 2}, {3, -1}, {0, 1}};
  std::vector<Complex> y = {{1, 0}, {0, 1}, {2, 2}};
  const auto& s = k::scalar_table();
  EXPECT_EQ(s.dotc(x.data(), y.data(), 3), Complex(1, -2) * Complex(1, 0) + Complex(3, 1) * Complex(0, 1) +
                                                Complex(0, -1) * Complex(2, 2));
  EXPECT_DOUBLE_EQ(s.norm_sq(x.data(), 3), 1 + 4 + 9 + 1 + 1);
  s.axpy({0, 1}, x.data(), y.data(), 3);
  EXPECT_EQ(y[0], Complex(1, 0) + Complex(0, 1) * Complex(1, 2));
  EXPECT_EQ(y[2], Complex(2, 2) + Complex(0, 1) * Complex(0, 1));
}

// Every length 0..33 exercises the vector body and the scalar tail.
TEST(Kernels, SimdVariantMatchesScalarReference) {
  const k::KernelTable* v = k::avx2_table();
  if (v == nullptr) GTEST_SKIP() << "AVX2 variant unavailable on this CPU/build";
  const auto& s = k::scalar_table();
  auto rng = testutil::stream(11, "kernels");
  for (std::size_t n = 0; n <= 33; ++n) {
    const auto x = random_row(rng, n);
    const auto y0 = random_row(rng, n);
    const Complex a(rng.gaussian(), rng.gaussian());

    EXPECT_LT(std::abs(s.dotc(x.data(), y0.data(), n) - v->dotc(x.data(), y0.data(), n)), 1e-12 * (1.0 + n)) << n;
    EXPECT_NEAR(s.norm_sq(x.data(), n), v->norm_sq(x.data(), n), 1e-12 * (1.0 + n)) << n;

    auto ys = y0, yv = y0;
    s.axpy(a, x.data(), ys.data(), n);
    v->axpy(a, x.data(), yv.data(), n);
    EXPECT_LT(max_diff(ys, yv), 1e-13) << n;

    const Complex c1(rng.gaussian(), rng.gaussian()), c2(rng.gaussian(), rng.gaussian());
    const Complex c3(rng.gaussian(), rng.gaussian()), c4(rng.gaussian(), rng.gaussian());
    auto xs = x, xv = x;
    ys = y0;
    yv = y0;
    s.rotate(xs.data(), ys.data(), n, c1, c2, c3, c4);
    v->rotate(xv.data(), yv.data(), n, c1, c2, c3, c4);
    EXPECT_LT(max_diff(xs, xv), 1e-13) << n;
    EXPECT_LT(max_diff(ys, yv), 1e-13) << n;
  }
}

TEST(Kernels, ActiveTableIsOneOfTheKnownVariants) {
  const std::string name = k::active().name;
  EXPECT_TRUE(name == "scalar" || name == "avx2") << name;
}
