#include <gtest/gtest.h>

#include <random>

#include "coherence_lab/closed_forms.hpp"
#include "coherence_lab/error.hpp"
#include "coherence_lab/selection.hpp"
#include "oracles.hpp"

using namespace coherence_lab;

namespace {

Graph star(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({0, v, 1.0});
  return build_graph(edges);
}

}  // namespace

TEST(BruteForce, CycleAntipodalPairs) {
  const SelectionResult r = brute_force_select(build_cycle(6), 2, Dynamics::NoiseFree);
  EXPECT_EQ(r.optimal_sets, (std::vector<LeaderSet>{{0, 3}, {1, 4}, {2, 5}}));
  EXPECT_EQ(r.optimal_count, 3u);
  EXPECT_NEAR(r.value, 4.0 / 3.0, 1e-12);
  EXPECT_EQ(r.evaluated_count, 15u);
}

TEST(BruteForce, PathCenter) {
  const SelectionResult r = brute_force_select(build_path(5), 1, Dynamics::NoiseFree);
  ASSERT_EQ(r.optimal_sets.size(), 1u);
  EXPECT_EQ(r.optimal_sets[0], (LeaderSet{2}));
  EXPECT_NEAR(r.value, 3.0, 1e-12);
}

TEST(BruteForce, BinaryTreeOptimaIncludeTheDepthTwoPair) {
  const PerfectTree t = build_perfect_tree(2, 4);
  const SelectionResult r = brute_force_select(t.graph, 2, Dynamics::NoiseFree);
  EXPECT_NEAR(r.value, 33.5, 1e-8);
  bool saw_depth_two_pair = false;
  for (const LeaderSet& s : r.optimal_sets) {
    const auto geom = tree_pair_geometry(t, s[0], s[1]);
    ASSERT_TRUE(geom.has_value());
    if (geom->x_to_y == 4 && geom->root_to_x == 2) saw_depth_two_pair = true;
  }
  EXPECT_TRUE(saw_depth_two_pair);
}

TEST(BruteForce, BudgetAndArguments) {
  SelectionOptions tight;
  tight.budget = 10;
  EXPECT_THROW(brute_force_select(build_cycle(6), 2, Dynamics::NoiseFree, {}, tight), Error);
  try {
    brute_force_select(build_cycle(6), 2, Dynamics::NoiseFree, {}, tight);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  EXPECT_THROW(brute_force_select(build_cycle(6), 0, Dynamics::NoiseFree), Error);
  EXPECT_THROW(brute_force_select(build_cycle(6), 7, Dynamics::NoiseFree), Error);
}

TEST(BruteForce, MatchesCycleAndPathConstructions) {
  for (std::size_t n = 3; n <= 16; ++n) {
    for (std::size_t k = 1; k <= 4 && k <= n; ++k) {
      const SelectionResult cyc = brute_force_select(build_cycle(n), k, Dynamics::NoiseFree);
      EXPECT_NEAR(cyc.value, cycle_nf_optimal(n, k).value, 1e-9);
      for (const LeaderSet& s : cyc.optimal_sets) EXPECT_TRUE(in_cycle_optimal_family(cycle_gaps(n, s)));
      const SelectionResult pth = brute_force_select(build_path(n), k, Dynamics::NoiseFree);
      EXPECT_NEAR(pth.value, path_nf_optimal(n, k).value, 1e-9);
    }
  }
}

TEST(BruteForce, CoOptimalSetsShareTheValue) {
  const Graph g = build_cycle(12);
  const SelectionResult r = brute_force_select(g, 3, Dynamics::NoiseFree);
  EXPECT_EQ(r.optimal_count, 4u);
  for (const LeaderSet& s : r.optimal_sets) EXPECT_NEAR(coherence_nf(g, s).value, r.value, 1e-12);
}

TEST(BruteForce, NoiseCorruptedMatchesTrace) {
  std::mt19937_64 rng(53);
  const Graph g = oracle::random_connected(rng, 10);
  const SelectionResult r = brute_force_select(g, 2, Dynamics::NoiseCorrupted, StubbornnessMap(2.0));
  double best = 1e300;
  for (const LeaderSet& s : oracle::all_subsets(10, 2)) best = std::min(best, oracle::nc(g, s, 2.0));
  EXPECT_NEAR(r.value, best, 1e-9);
  EXPECT_EQ(r.dynamics, Dynamics::NoiseCorrupted);
}

TEST(BruteForce, AddingANodeNeverHurts) {
  std::mt19937_64 rng(59);
  for (int rep = 0; rep < 10; ++rep) {
    const Graph g = oracle::random_connected(rng, 12);
    const SelectionResult r = brute_force_select(g, 2, Dynamics::NoiseFree);
    const LeaderSet& s = r.optimal_sets.front();
    for (NodeId v = 0; v < 12; ++v) {
      if (s.contains(v)) continue;
      EXPECT_LE(coherence_nf(g, LeaderSet{s[0], s[1], v}).value, r.value + 1e-12);
    }
  }
}

TEST(BruteForce, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(61);
  const Graph g = oracle::random_connected(rng, 18);
  for (std::size_t k : {1u, 2u, 3u}) {
    SelectionOptions one;
    one.threads = 1;
    SelectionOptions four;
    four.threads = 4;
    const SelectionResult a = brute_force_select(g, k, Dynamics::NoiseFree, {}, one);
    const SelectionResult b = brute_force_select(g, k, Dynamics::NoiseFree, {}, four);
    EXPECT_EQ(a.optimal_sets, b.optimal_sets);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.evaluated_count, b.evaluated_count);
  }
}

TEST(BruteForce, CapsReportedSets) {
  SelectionOptions capped;
  capped.max_reported = 2;
  const SelectionResult r = brute_force_select(build_cycle(6), 2, Dynamics::NoiseFree, {}, capped);
  EXPECT_EQ(r.optimal_sets.size(), 2u);
  EXPECT_EQ(r.optimal_count, 3u);
}

TEST(Candidates, DuplicatesAndStar) {
  const std::vector<LeaderSet> dup{{1, 3}, {1, 3}};
  const auto out = evaluate_candidates(build_cycle(6), dup, Dynamics::NoiseFree);
  ASSERT_TRUE(out[0].report && out[1].report);
  EXPECT_EQ(out[0].report->value, out[1].report->value);

  std::vector<LeaderSet> singles;
  for (NodeId v = 0; v < 5; ++v) singles.push_back(LeaderSet{v});
  const auto star_out = evaluate_candidates(star(5), singles, Dynamics::NoiseFree);
  for (NodeId v = 1; v < 5; ++v) EXPECT_LT(star_out[0].report->value, star_out[v].report->value);
}

TEST(Candidates, PairsMatchDirectSolves) {
  const PerfectTree t = build_perfect_tree(3, 3);
  std::mt19937_64 rng(67);
  std::vector<LeaderSet> pairs;
  for (int i = 0; i < 50; ++i) pairs.push_back(oracle::random_leaders(rng, t.graph.node_count(), 2));
  const auto out = evaluate_candidates(t.graph, pairs, Dynamics::NoiseFree);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ASSERT_TRUE(out[i].report.has_value());
    EXPECT_NEAR(out[i].report->value, oracle::nf(t.graph, pairs[i]), 1e-9);
    EXPECT_EQ(out[i].report->leaders, pairs[i]);
  }
}

TEST(Candidates, ErrorsStayPerCandidate) {
  const std::vector<LeaderSet> mixed{{0}, {}, {9}, {2}};
  const auto out = evaluate_candidates(build_path(4), mixed, Dynamics::NoiseCorrupted);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_TRUE(out[0].report.has_value());
  EXPECT_FALSE(out[1].report.has_value());
  EXPECT_FALSE(out[1].error.empty());
  EXPECT_FALSE(out[2].report.has_value());
  EXPECT_TRUE(out[3].report.has_value());
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(6, 2), 15u);
  EXPECT_EQ(binomial(341, 2), 57970u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(200, 100), UINT64_MAX);
}
