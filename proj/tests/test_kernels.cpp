#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mtdm/kernels.hpp"

using namespace mtdm;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

const kernels::KernelTable* simd() {
  return kernels::avx2_table();
}

}  // namespace

TEST(Kernels, ScalarReference) {
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {4, -5, 6};
  EXPECT_EQ(kernels::scalar::dot(a.data(), b.data(), 3), 12.0);
  std::vector<double> y = {1, 1, 1};
  kernels::scalar::axpy(2.0, a.data(), y.data(), 3);
  EXPECT_EQ(y, (std::vector<double>{3, 5, 7}));
  EXPECT_EQ(kernels::scalar::min_value(b.data(), 3), -5.0);
  EXPECT_TRUE(std::isinf(kernels::scalar::min_value(b.data(), 0)));

  // slack + t * rate >= 0 with slack = (1, 2), rate = (1, -2): t in [-1, 1].
  const std::vector<double> s = {1, 2};
  const std::vector<double> r = {1, -2};
  const auto c = kernels::scalar::chord(s.data(), r.data(), 2, 1e-13, -10, 10);
  EXPECT_EQ(c.lo, -1.0);
  EXPECT_EQ(c.hi, 1.0);
}

TEST(Kernels, ChordIgnoresTinyRates) {
  const std::vector<double> s = {0.5, -3.0};
  const std::vector<double> r = {1.0, 1e-15};
  const auto c = kernels::scalar::chord(s.data(), r.data(), 2, 1e-13, -7, 7);
  EXPECT_EQ(c.lo, -0.5);
  EXPECT_EQ(c.hi, 7.0);
}

TEST(Kernels, Avx2MatchesScalar) {
  const auto* t = simd();
  if (t == nullptr) GTEST_SKIP() << "AVX2 kernels unavailable";
  std::mt19937_64 rng(5);
  for (std::size_t n = 0; n < 70; ++n) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    auto y1 = random_vec(rng, n);
    auto y2 = y1;

    const double ds = kernels::scalar::dot(a.data(), b.data(), n);
    const double dv = t->dot(a.data(), b.data(), n);
    EXPECT_NEAR(ds, dv, 1e-13 * (1.0 + std::abs(ds))) << n;

    kernels::scalar::axpy(0.37, a.data(), y1.data(), n);
    t->axpy(0.37, a.data(), y2.data(), n);
    EXPECT_EQ(y1, y2) << n;

    auto rate = random_vec(rng, n);
    for (std::size_t i = 0; i < n; i += 5) rate[i] = 1e-16;
    std::vector<double> slack(n);
    for (std::size_t i = 0; i < n; ++i) slack[i] = std::abs(a[i]);
    const auto cs = kernels::scalar::chord(slack.data(), rate.data(), n, 1e-13, -50, 50);
    const auto cv = t->chord(slack.data(), rate.data(), n, 1e-13, -50, 50);
    EXPECT_EQ(cs.lo, cv.lo) << n;
    EXPECT_EQ(cs.hi, cv.hi) << n;

    EXPECT_EQ(kernels::scalar::min_value(a.data(), n), t->min_value(a.data(), n)) << n;
  }
}

TEST(Kernels, SelectSwitchesTable) {
  const auto& before = kernels::active();
  ASSERT_TRUE(kernels::select(kernels::Isa::Scalar));
  EXPECT_EQ(kernels::active().name, kernels::scalar_table().name);
  if (simd() != nullptr) {
    ASSERT_TRUE(kernels::select(kernels::Isa::Avx2));
    EXPECT_EQ(kernels::active().name, simd()->name);
  } else {
    EXPECT_FALSE(kernels::select(kernels::Isa::Avx2));
  }
  kernels::select(before.name == kernels::scalar_table().name ? kernels::Isa::Scalar
                                                              : kernels::Isa::Avx2);
}
