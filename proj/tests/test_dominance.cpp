#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mtdm/dominance.hpp"
#include "mtdm/error.hpp"
#include "mtdm/mtdp.hpp"
#include "mtdm/oracle.hpp"
#include "support.hpp"

using namespace mtdm;

namespace {

struct Fixture {
  Mtdp mtdp;
  CredalSet cs;
  SubSystem sub;
  double dmax;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    const auto pf = mtdm::testing::fixture();
    auto m = to_mtdp(pf);
    auto cs = to_credal_set(pf);
    auto sub = sub_system(m);
    const double dmax = max_delta(sub.system).value;
    return Fixture{std::move(m), std::move(cs), std::move(sub), dmax};
  }();
  return f;
}

DominanceRelation relation_of(const std::vector<std::vector<bool>>& dom) {
  DominanceRelation rel;
  for (std::size_t i = 0; i < dom.size(); ++i) rel.acts.push_back(std::string(1, char('a' + i)));
  rel.dominates = dom;
  return rel;
}

}  // namespace

TEST(DominanceLp, ObjectiveForDiracPoint) {
  const auto& f = fixture();
  const auto& a1 = f.sub.acts[0];
  const auto& a5 = f.sub.acts[4];
  const auto p = dominance_lp(f.sub.system, f.cs, 0.0, a1, a5, 0);
  ASSERT_EQ(f.cs.extreme_points()[0], (Probability{1, 0, 0, 0, 0}));
  for (std::size_t l = 0; l < p.objective.size(); ++l) {
    const double want = l == a1.outcome_index[0] ? 1.0 : l == a5.outcome_index[0] ? -1.0 : 0.0;
    EXPECT_EQ(p.objective[l], want) << l;
  }
  const auto same = dominance_lp(f.sub.system, f.cs, 0.0, a1, a1, 3);
  EXPECT_TRUE(std::all_of(same.objective.begin(), same.objective.end(),
                          [](double c) { return c == 0.0; }));
}

TEST(Dominance, Reflexive) {
  const auto& f = fixture();
  const auto v = dominates(f.sub.system, f.cs, 0.0, f.sub.acts[2], f.sub.acts[2]);
  EXPECT_TRUE(v.dominates);
  EXPECT_EQ(v.min_opt, 0.0);
}

TEST(Dominance, FirstActDominatesAllAtDeltaMax) {
  const auto& f = fixture();
  const DominanceChecker ch(f.sub.system, f.cs, f.dmax);
  for (std::size_t j = 0; j < f.sub.acts.size(); ++j)
    EXPECT_TRUE(ch.dominates(f.sub.acts[0], f.sub.acts[j]).dominates) << j;
}

TEST(Dominance, StrictDominatorsAtZero) {
  const auto& f = fixture();
  const auto rel = delta_dominance(f.sub, f.cs, 0.0);
  for (std::size_t victim : {2u, 5u}) {
    bool beaten = false;
    for (std::size_t j = 0; j < rel.size(); ++j) beaten = beaten || rel.strictly(j, victim);
    EXPECT_TRUE(beaten) << rel.acts[victim];
  }
  EXPECT_TRUE(transitivity_violations(rel).empty());
  for (std::size_t i = 0; i < rel.size(); ++i) {
    EXPECT_TRUE(rel.dominates[i][i]);
    for (std::size_t j = 0; j < rel.size(); ++j)
      EXPECT_EQ(rel.dominates[i][j], rel.opt_values[i][j] >= -rel.eps_opt);
  }
}

TEST(Dominance, NonDominanceWitnessIsACounterexample) {
  const auto& f = fixture();
  const DominanceChecker ch(f.sub.system, f.cs, 0.0);
  const auto v = ch.dominates(f.sub.acts[1], f.sub.acts[0]);
  ASSERT_FALSE(v.dominates);
  const auto& pi = f.cs.extreme_points()[v.argmin_t];
  const double gap = expected_utility(v.witness, pi, f.sub.acts[1]) -
                     expected_utility(v.witness, pi, f.sub.acts[0]);
  EXPECT_NEAR(gap, v.min_opt, 1e-12);
  EXPECT_LE(lp::max_violation(ch.nabla(), v.witness), 1e-9);
}

TEST(Dominance, ThreadedMatchesSerial) {
  const auto& f = fixture();
  DominanceOptions serial;
  DominanceOptions threaded;
  threaded.threads = 3;
  const double d = 0.5 * f.dmax;
  const auto a = delta_dominance(f.sub, f.cs, d, serial);
  const auto b = delta_dominance(f.sub, f.cs, d, threaded);
  EXPECT_EQ(a.dominates, b.dominates);
  EXPECT_EQ(a.opt_values, b.opt_values);
}

TEST(Dominance, ObjectiveScalingKeepsVerdicts) {
  const auto& f = fixture();
  const DominanceChecker ch(f.sub.system, f.cs, 0.0);
  const lp::Solver solver(ch.nabla());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 3; j < 6; ++j)
      for (const auto& pi : f.cs.extreme_points()) {
        auto c = ch.objective(pi, f.sub.acts[i], f.sub.acts[j]);
        const double base = *solver.solve(c).optimal_value;
        for (auto& x : c) x *= 7.5;
        const double scaled = *solver.solve(c).optimal_value;
        EXPECT_EQ(base >= -1e-8, scaled >= -1e-8);
        EXPECT_NEAR(scaled, 7.5 * base, 1e-9);
      }
}

TEST(Dominance, RelabelingElementsPermutesObjective) {
  // Three-element chain with two acts; reverse the element order.
  const PreferenceSystem ps({"t", "m", "b"}, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}}, {},
                            0, 2);
  const PreferenceSystem rev({"b", "m", "t"}, {{0, 0}, {1, 1}, {2, 2}, {1, 0}, {2, 1}, {2, 0}}, {},
                             2, 0);
  const auto cs = full_simplex(StateSpace::numbered(2));
  const Act x{"x", {0, 2}};
  const Act y{"y", {1, 1}};
  const Act xr{"x", {2, 0}};
  const Act yr{"y", {1, 1}};
  for (std::size_t t = 0; t < 2; ++t) {
    const auto p = dominance_lp(ps, cs, 0.1, x, y, t);
    const auto q = dominance_lp(rev, cs, 0.1, xr, yr, t);
    for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(p.objective[l], q.objective[2 - l]);
    EXPECT_NEAR(*lp::solve(p).optimal_value, *lp::solve(q).optimal_value, 1e-12);
  }
}

TEST(Dominance, Errors) {
  const auto& f = fixture();
  EXPECT_THROW(DominanceChecker(f.sub.system, f.cs, f.dmax + 1e-3), InconsistencyError);
  const DominanceChecker ch(f.sub.system, f.cs, 0.0);
  EXPECT_THROW(ch.dominates(Act{"bad", {0, 1}}, f.sub.acts[0]), InputError);
  EXPECT_THROW(ch.dominates(Act{"bad", {0, 1, 2, 3, 99}}, f.sub.acts[0]), InputError);
  const auto bare = CredalSet::from_constraints(f.cs.space(), f.cs.constraints());
  EXPECT_THROW(DominanceChecker(f.sub.system, bare, 0.0), InputError);
}

TEST(ChoiceSets, HandMadeRelations) {
  // identity on two acts
  auto id = relation_of({{true, false}, {false, true}});
  EXPECT_TRUE(maximal_set(id).empty());
  EXPECT_EQ(undominated_set(id), (std::vector<std::size_t>{0, 1}));
  // single act
  auto one = relation_of({{true}});
  EXPECT_EQ(maximal_set(one), (std::vector<std::size_t>{0}));
  EXPECT_EQ(undominated_set(one), (std::vector<std::size_t>{0}));
  // a ~ b > c
  auto tie = relation_of({{true, true, true}, {true, true, true}, {false, false, true}});
  EXPECT_EQ(maximal_set(tie), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(undominated_set(tie), (std::vector<std::size_t>{0, 1}));
}

TEST(Hasse, ChainAntichainAndClasses) {
  auto chain = relation_of({{true, true, true}, {false, true, true}, {false, false, true}});
  auto h = hasse_edges(chain);
  EXPECT_EQ(h.edges, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}}));

  auto anti = relation_of({{true, false, false}, {false, true, false}, {false, false, true}});
  EXPECT_TRUE(hasse_edges(anti).edges.empty());
  EXPECT_EQ(hasse_edges(anti).classes.size(), 3u);

  auto tie = relation_of({{true, false, true}, {true, true, true}, {false, false, true}});
  tie.dominates[0][1] = true;
  h = hasse_edges(tie);
  ASSERT_EQ(h.classes.size(), 2u);
  EXPECT_EQ(h.classes[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(h.edges, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
}

TEST(Hasse, FixtureTopAtDeltaMax) {
  const auto& f = fixture();
  const auto rel = delta_dominance(f.sub, f.cs, f.dmax);
  const auto h = hasse_edges(rel);
  // The class of the first act reaches every other class.
  std::size_t top = 0;
  for (std::size_t c = 0; c < h.classes.size(); ++c)
    if (h.classes[c].front() == 0) top = c;
  std::vector<bool> seen(h.classes.size(), false);
  std::vector<std::size_t> stack = {top};
  seen[top] = true;
  while (!stack.empty()) {
    const auto c = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : h.edges)
      if (a == c && !seen[b]) stack.push_back(b), seen[b] = true;
  }
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }));
}

TEST(Dominance, RandomInstanceAgreesWithOracle) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 4; ++k) {
    const auto m = mtdm::testing::random_mtdp(rng, 3, 3, 2);
    const auto sub = sub_system(m);
    const auto cs = ordered_family(m.space());
    const auto rel = delta_dominance(sub, cs, 0.0);
    const auto table = refute_all(sub.system, cs, 0.0, sub.acts, 3000, 17 + k);
    for (std::size_t i = 0; i < rel.size(); ++i)
      for (std::size_t j = 0; j < rel.size(); ++j) {
        if (rel.dominates[i][j]) EXPECT_FALSE(table.found[i][j].has_value());
        if (rel.opt_values[i][j] < -1e-3) EXPECT_TRUE(table.found[i][j].has_value());
      }
  }
}
