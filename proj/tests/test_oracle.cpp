#include <gtest/gtest.h>

#include "mtdm/error.hpp"
#include "mtdm/kernels.hpp"
#include "mtdm/mtdp.hpp"
#include "mtdm/oracle.hpp"
#include "support.hpp"

using namespace mtdm;

namespace {

PreferenceSystem chain3() {
  return PreferenceSystem({"t", "m", "b"}, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}}, {},
                          0, 2);
}

const SubSystem& fixture_sub() {
  static const SubSystem sub = sub_system(to_mtdp(mtdm::testing::fixture()));
  return sub;
}

}  // namespace

TEST(Sampler, TwoElementChainIsAPoint) {
  const PreferenceSystem ps({"t", "b"}, {{0, 0}, {1, 1}, {0, 1}}, {}, 0, 1);
  const auto s = sample_utilities(ps, 0.0, 5, 1);
  EXPECT_TRUE(s.degenerate);
  ASSERT_EQ(s.samples.size(), 5u);
  for (const auto& u : s.samples) {
    EXPECT_EQ(u.values[0], 1.0);
    EXPECT_EQ(u.values[1], 0.0);
  }
}

TEST(Sampler, ThreeElementChain) {
  const auto s = sample_utilities(chain3(), 0.1, 400, 2);
  EXPECT_FALSE(s.degenerate);
  EXPECT_EQ(s.dimension, 1u);
  double lo = 1.0;
  double hi = 0.0;
  for (const auto& u : s.samples) {
    EXPECT_GE(u.margin, -1e-9);
    EXPECT_NEAR(u.values[0], 1.0, 1e-12);
    EXPECT_NEAR(u.values[2], 0.0, 1e-12);
    lo = std::min(lo, u.values[1]);
    hi = std::max(hi, u.values[1]);
  }
  // v_mid ranges over [0.1, 0.9].
  EXPECT_GE(lo, 0.1 - 1e-9);
  EXPECT_LE(hi, 0.9 + 1e-9);
  EXPECT_LT(lo, 0.15);
  EXPECT_GT(hi, 0.85);
}

TEST(Sampler, CollapsesAtDeltaMax) {
  const auto s = sample_utilities(chain3(), 0.5, 3, 2);
  EXPECT_TRUE(s.degenerate);
  EXPECT_NEAR(s.samples[0].values[1], 0.5, 1e-9);
}

TEST(Sampler, SeedDeterminism) {
  const auto a = sample_utilities(chain3(), 0.0, 50, 9);
  const auto b = sample_utilities(chain3(), 0.0, 50, 9);
  const auto c = sample_utilities(chain3(), 0.0, 50, 10);
  for (std::size_t k = 0; k < 50; ++k) EXPECT_EQ(a.samples[k].values, b.samples[k].values);
  EXPECT_NE(a.samples[3].values, c.samples[3].values);
}

TEST(Sampler, ScalarAndAvx2StreamsAgree) {
  if (kernels::avx2_table() == nullptr) GTEST_SKIP() << "AVX2 kernels unavailable";
  const auto& sub = fixture_sub();
  kernels::select(kernels::Isa::Scalar);
  const auto a = sample_utilities(sub.system, 0.01, 20, 4);
  kernels::select(kernels::Isa::Avx2);
  const auto b = sample_utilities(sub.system, 0.01, 20, 4);
  for (std::size_t k = 0; k < 20; ++k) EXPECT_EQ(a.samples[k].values, b.samples[k].values);
}

TEST(Sampler, FixtureSamplesRespectR1) {
  const auto& sub = fixture_sub();
  const auto s = sample_utilities(sub.system, 0.0, 200, 5);
  EXPECT_FALSE(s.degenerate);
  const auto nabla = nabla_constraints(sub.system, 0.0);
  for (const auto& u : s.samples) {
    EXPECT_GE(u.margin, -1e-9);
    EXPECT_LE(lp::max_violation(nabla, u.values), 1e-9);
    for (const auto& [a, b] : sub.system.r1()) EXPECT_GE(u.values[a], u.values[b] - 1e-9);
  }
}

TEST(Sampler, MeanUtilityIsFeasible) {
  const auto& sub = fixture_sub();
  std::vector<double> mean;
  for (const auto& e : sub.elements) mean.push_back((e.coords[0] + e.coords[1] + e.coords[2]) / 3);
  EXPECT_LE(lp::max_violation(nabla_constraints(sub.system, 0.0), mean), 1e-12);
}

TEST(Sampler, InconsistentThrows) {
  EXPECT_THROW(sample_utilities(chain3(), 0.6, 1, 1), InconsistencyError);
}

TEST(Refute, Examples) {
  const auto& sub = fixture_sub();
  const auto cs = ordered_family(StateSpace::numbered(5));
  const double dmax = max_delta(sub.system).value;
  EXPECT_FALSE(refute_dominance(sub.system, cs, 0.0, sub.acts[3], sub.acts[3], 300, 1));
  EXPECT_FALSE(refute_dominance(sub.system, cs, dmax, sub.acts[0], sub.acts[1], 300, 1));
  const auto hit = refute_dominance(sub.system, cs, 0.0, sub.acts[1], sub.acts[0], 300, 1);
  ASSERT_TRUE(hit.has_value());
  EXPECT_LT(expected_utility(hit->u, hit->pi, sub.acts[1]) -
                expected_utility(hit->u, hit->pi, sub.acts[0]),
            -1e-8);
}
