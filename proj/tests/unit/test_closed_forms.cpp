#include <gtest/gtest.h>

#include <map>
#include <set>

#include "coherence_lab/closed_forms.hpp"
#include "coherence_lab/coherence.hpp"
#include "coherence_lab/error.hpp"
#include "coherence_lab/selection.hpp"
#include "oracles.hpp"

using namespace coherence_lab;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::NotApplicable;
}

GapVector cycle(std::vector<std::size_t> gaps) { return {GapContext::Cycle, std::move(gaps)}; }
GapVector path(std::vector<std::size_t> gaps) { return {GapContext::Path, std::move(gaps)}; }

}  // namespace

TEST(CycleNf, Examples) {
  EXPECT_NEAR(cycle_nf_coherence(cycle({2, 2})), 0.5, 1e-15);
  EXPECT_NEAR(cycle_nf_coherence(cycle({5})), 2.0, 1e-15);
  EXPECT_EQ(cycle_nf_coherence(cycle({1, 1, 1, 1, 1})), 0.0);
  EXPECT_EQ(code_of([] { cycle_nf_coherence(cycle({3, 0})); }), ErrorCode::BadGapVector);
  EXPECT_EQ(code_of([] { cycle_nf_coherence(path({1, 1})); }), ErrorCode::BadGapVector);
}

TEST(CycleNf, MatchesTraceForEverySmallLeaderSet) {
  for (std::size_t n = 3; n <= 40; ++n) {
    const Graph g = build_cycle(n);
    for (std::size_t k = 1; k <= 3 && k <= n; ++k) {
      if (n > 20 && k == 3) continue;  // C(40,3) trace solves add nothing over n <= 20
      for (const LeaderSet& s : oracle::all_subsets(n, k)) {
        const double closed = cycle_nf_coherence(cycle_gaps(n, s));
        ASSERT_NEAR(closed, coherence_nf(g, s).value, 1e-9) << "n=" << n;
      }
    }
  }
}

TEST(CycleNf, GapRoundTrip) {
  const LeaderSet s{1, 4, 6};
  const GapVector c = cycle_gaps(9, s);
  EXPECT_EQ(c.gaps, (std::vector<std::size_t>{3, 2, 4}));
  EXPECT_EQ(cycle_leaders(c, 1), s);
  EXPECT_EQ(canonical_rotation(c).gaps, (std::vector<std::size_t>{2, 4, 3}));
}

TEST(CycleNfOptimal, Examples) {
  const CycleOptimum six = cycle_nf_optimal(6, 2);
  EXPECT_EQ(six.canonical.gaps, (std::vector<std::size_t>{3, 3}));
  EXPECT_NEAR(six.value, 4.0 / 3.0, 1e-15);
  const CycleOptimum seven = cycle_nf_optimal(7, 2);
  EXPECT_EQ(seven.canonical.gaps, (std::vector<std::size_t>{3, 4}));
  EXPECT_NEAR(seven.value, 23.0 / 12.0, 1e-15);
  const CycleOptimum eight = cycle_nf_optimal(8, 8);
  EXPECT_EQ(eight.canonical.gaps, std::vector<std::size_t>(8, 1));
  EXPECT_EQ(eight.value, 0.0);
  EXPECT_EQ(code_of([] { cycle_nf_optimal(5, 6); }), ErrorCode::BadParameter);
  EXPECT_EQ(code_of([] { cycle_nf_optimal(5, 0); }), ErrorCode::BadParameter);
}

TEST(CycleNfOptimal, FamilyMembership) {
  EXPECT_TRUE(in_cycle_optimal_family(cycle({3, 4, 3})));
  EXPECT_FALSE(in_cycle_optimal_family(cycle({2, 5, 3})));
}

TEST(PathNf, Examples) {
  EXPECT_NEAR(path_nf_coherence(path({1, 1})), 1.0, 1e-15);
  EXPECT_NEAR(path_nf_coherence(path({1, 1, 1})), 1.0, 1e-15);
  EXPECT_NEAR(path_nf_coherence(path({1, 2, 1})), 1.25, 1e-15);
  EXPECT_EQ(path_gaps(5, LeaderSet{1, 3}).gaps, (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(code_of([] { path_nf_coherence(path({1, 0, 1})); }), ErrorCode::BadGapVector);
}

TEST(PathNf, SymmetricReadingMatchesTrace) {
  for (std::size_t n = 2; n <= 30; ++n) {
    const Graph g = build_path(n);
    for (std::size_t k = 1; k <= 3 && k <= n; ++k) {
      for (const LeaderSet& s : oracle::all_subsets(n, k)) {
        ASSERT_NEAR(path_nf_coherence(path_gaps(n, s)), coherence_nf(g, s).value, 1e-9) << "n=" << n;
      }
    }
  }
}

TEST(PathNf, AsymmetricReadingIsRefuted) {
  // The asymmetric reading pairs c_1 with c_k; for k = 2 that is the interior gap, which disagrees with trace.
  const GapVector c = path_gaps(9, LeaderSet{0, 3});
  const double symmetric = path_nf_coherence(c);
  const double asymmetric = symmetric - (c.gaps[0] + c.gaps[2]) / 4.0 + (c.gaps[0] + c.gaps[1]) / 4.0;
  EXPECT_NEAR(symmetric, coherence_nf(build_path(9), LeaderSet{0, 3}).value, 1e-12);
  EXPECT_GT(std::abs(asymmetric - symmetric), 0.1);
}

TEST(PathNf, SingleLeaderBoundary) {
  for (std::size_t a = 0; a <= 20; ++a) {
    for (std::size_t b = 0; a + b <= 20; ++b) {
      if (a + b == 0) continue;
      const double expected = 0.25 * double(a * a + b * b + a + b);
      EXPECT_NEAR(path_nf_coherence(path({a, b})), expected, 1e-12);
      EXPECT_NEAR(expected, coherence_nf(build_path(a + b + 1), LeaderSet{a}).value, 1e-9);
    }
  }
}

TEST(PathNfOptimal, Examples) {
  const PathOptimum three = path_nf_optimal(3, 1);
  EXPECT_EQ(three.gaps.gaps, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(three.leaders, (LeaderSet{1}));
  const PathOptimum all = path_nf_optimal(6, 6);
  EXPECT_EQ(all.gaps.gaps, (std::vector<std::size_t>{0, 1, 1, 1, 1, 1, 0}));
  EXPECT_EQ(all.value, 0.0);
  EXPECT_EQ(code_of([] { path_nf_optimal(4, 5); }), ErrorCode::BadParameter);
}

TEST(PathNfOptimal, MatchesExhaustiveSearch) {
  for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{10, 2}, {40, 3}, {25, 4}, {17, 1}}) {
    const SelectionResult best = brute_force_select(build_path(n), k, Dynamics::NoiseFree);
    const PathOptimum opt = path_nf_optimal(n, k);
    EXPECT_NEAR(opt.value, best.value, 1e-9) << "n=" << n << " k=" << k;
    EXPECT_NEAR(coherence_nf(build_path(n), opt.leaders).value, opt.value, 1e-9);
  }
}

TEST(PathNfOptimal, RoundedFormUsedOnlyWhenOptimal) {
  int applied = 0;
  for (std::size_t n = 2; n <= 60; ++n) {
    for (std::size_t k = 1; k <= 6 && k <= n; ++k) {
      const PathOptimum opt = path_nf_optimal(n, k);
      if (!opt.rounded_form_applies) continue;
      ++applied;
      const GapVector& c = opt.gaps;
      EXPECT_EQ(c.gaps.front(), c.gaps.back());
      EXPECT_EQ(c.gaps, path_nf_rounded_gaps(n, k)->gaps);
    }
  }
  EXPECT_GT(applied, 0);
}

TEST(TreeOmega, Examples) {
  EXPECT_NEAR(tree_omega({2, 4, 2, 4}), 67.0, 1e-9);
  EXPECT_NEAR(tree_omega({3, 4, 1, 2}) / 2, 183.25, 1e-9);
  EXPECT_NEAR(tree_omega({4, 4, 0, 1}) / 2, 583.5, 1e-9);
  EXPECT_EQ(code_of([] { tree_omega({2, 3, 4, 5}); }), ErrorCode::BadGeometry);
  EXPECT_EQ(code_of([] { tree_omega({2, 3, 1, 5}); }), ErrorCode::BadGeometry);
  EXPECT_EQ(code_of([] { tree_omega({2, 0, 0, 1}); }), ErrorCode::BadGeometry);
}

TEST(TreeOmega, SymmetricInSwappingLeaders) {
  for (std::size_t M = 2; M <= 5; ++M) {
    for (std::size_t h = 1; h <= 6; ++h) {
      for (std::size_t dxy = 1; dxy <= 2 * h; ++dxy) {
        for (std::size_t dxr = 0; dxr <= dxy; ++dxr) {
          if (dxr > h || dxy - dxr > h) continue;
          EXPECT_NEAR(tree_omega({M, h, dxr, dxy}), tree_omega({M, h, dxy - dxr, dxy}),
                      1e-9 * tree_omega({M, h, dxr, dxy}));
        }
      }
    }
  }
}

TEST(TreeOmega, PlacementRealizesGeometry) {
  const PerfectTree t = build_perfect_tree(3, 3);
  for (std::size_t dxy = 1; dxy <= 6; ++dxy) {
    for (std::size_t dxr = 0; dxr <= dxy; ++dxr) {
      if (dxr > 3 || dxy - dxr > 3) continue;
      const TreeGeometry geom{3, 3, dxr, dxy};
      const auto [x, y] = place_tree_leaders(t, geom);
      EXPECT_EQ(t.level[x], dxr);
      EXPECT_EQ(graph_distance(t.graph, x, y), double(dxy));
      EXPECT_EQ(lowest_common_ancestor(t.parent, t.level, x, y), 0u);
    }
  }
}

TEST(TreeOptimal, Examples) {
  const TreeOptimum binary = tree_optimal_two(2, 4);
  EXPECT_EQ(binary.geometry, (TreeGeometry{2, 4, 2, 4}));
  EXPECT_NEAR(binary.value, 33.5, 1e-9);
  const TreeOptimum ternary = tree_optimal_two(3, 4);
  EXPECT_EQ(ternary.geometry, (TreeGeometry{3, 4, 1, 2}));
  EXPECT_NEAR(ternary.value, 183.25, 1e-9);
  const TreeOptimum five = tree_optimal_two(5, 4);
  EXPECT_EQ(five.geometry.x_to_y, 1u);
  EXPECT_EQ(five.geometry.root_to_x, 0u);
  EXPECT_FALSE(five.height_too_small);
}

TEST(TreeOptimal, SmallHeightFallsBackToSearch) {
  const TreeOptimum small = tree_optimal_two(2, 3);
  EXPECT_TRUE(small.height_too_small);
  const SelectionResult best = brute_force_select(build_perfect_tree(2, 3).graph, 2, Dynamics::NoiseFree);
  EXPECT_NEAR(small.value, best.value, 1e-9);
  EXPECT_EQ(code_of([] { tree_optimal_two(2, 0); }), ErrorCode::BadParameter);
}

TEST(TreeOptimal, ValueBySizeMatchesOmega) {
  for (std::size_t h = 4; h <= 7; ++h) {
    for (std::size_t M = 2; M <= 5; ++M) {
      const double n = double(perfect_tree_size(M, h));
      const double by_size = tree_optimal_value_by_size(M, perfect_tree_size(M, h));
      EXPECT_NEAR(by_size, tree_optimal_two(M, h).value, 1e-9 * n * n) << "M=" << M << " h=" << h;
    }
  }
}

TEST(TreeOptimal, BinaryOptimumHasRootAsCommonAncestor) {
  const PerfectTree t = build_perfect_tree(2, 4);
  const SelectionResult best = brute_force_select(t.graph, 2, Dynamics::NoiseFree);
  for (const LeaderSet& s : best.optimal_sets) {
    EXPECT_EQ(lowest_common_ancestor(t.parent, t.level, s[0], s[1]), 0u);
  }
}

TEST(TreeOptimal, BinaryTieAtHeightFour) {
  // Two geometries reach the optimum at h = 4; only (2, 4) survives from h = 5 on.
  EXPECT_NEAR(tree_omega({2, 4, 1, 3}), tree_omega({2, 4, 2, 4}), 1e-9);
  for (std::size_t h = 5; h <= 8; ++h) EXPECT_GT(tree_omega({2, h, 1, 3}), tree_omega({2, h, 2, 4}) + 1.0);
}

TEST(CycleNc, Examples) {
  EXPECT_NEAR(cycle_nc_two_coherence(4, 3), 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(cycle_nc_two_coherence(6, 4), 1040.0 / 336.0, 1e-12);
  EXPECT_NEAR(cycle_nc_optimal_value(4), 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(cycle_nc_optimal_value(10), 7.0, 1e-12);
  EXPECT_EQ(code_of([] { cycle_nc_optimal_value(9); }), ErrorCode::OddN);
  EXPECT_EQ(code_of([] { cycle_nc_two_coherence(10, 0); }), ErrorCode::BadParameter);
  EXPECT_EQ(code_of([] { cycle_nc_two_coherence(10, 11); }), ErrorCode::BadParameter);
}

TEST(CycleNc, IntegerSweepMinimizedHalfwayRound) {
  for (std::size_t n = 4; n <= 30; n += 2) {
    std::size_t best_i = 0;
    double best = 1e300;
    for (std::size_t i = 1; i <= n; ++i) {
      const double v = cycle_nc_two_coherence(n, i);
      if (v < best - 1e-12) best = v, best_i = i;
    }
    EXPECT_EQ(best_i, (n + 2) / 2);
    EXPECT_NEAR(best, cycle_nc_optimal_value(n), 1e-9);
  }
}

TEST(CycleNc, CorrectedPolynomialMatchesTrace) {
  for (std::size_t n = 3; n <= 30; ++n) {
    for (std::size_t i = 2; i <= n; ++i) {
      EXPECT_NEAR(cycle_nc_two_coherence(n, i, CycleNcMethod::CorrectedPolynomial), cycle_nc_two_coherence(n, i),
                  1e-9 * n * n);
    }
  }
}

TEST(CycleNc, UncorrectedPolynomialDiscrepancyIsReported) {
  std::size_t mismatches = 0, checked = 0;
  double worst = 0.0;
  for (std::size_t n = 4; n <= 24; ++n) {
    for (std::size_t i = 2; i <= n; ++i) {
      const double gap = std::abs(cycle_nc_two_coherence(n, i, CycleNcMethod::PrintedPolynomial) -
                                  cycle_nc_two_coherence(n, i));
      ++checked;
      if (gap > 1e-9) ++mismatches;
      worst = std::max(worst, gap);
    }
  }
  RecordProperty("uncorrected_polynomial_mismatches", std::to_string(mismatches) + "/" + std::to_string(checked));
  std::cout << "uncorrected cycle-nc polynomial disagrees with trace on " << mismatches << "/" << checked
            << " (n,i) pairs, worst gap " << worst << "\n";
  EXPECT_NEAR(cycle_nc_two_coherence(10, 6, CycleNcMethod::PrintedPolynomial), -250.0 / 3.0, 1e-9);
}

TEST(CycleNc, LargeNRatio) {
  EXPECT_NEAR(cycle_nc_optimal_value(4096) / (4096.0 * 4096.0), 1.0 / 24.0, 1e-3);
}
