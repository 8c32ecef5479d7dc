#include "coherence_lab/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "coherence_lab/coherence.hpp"
#include "coherence_lab/error.hpp"
#include "coherence_lab/selection.hpp"

namespace coherence_lab {

namespace {

using Wide = unsigned long long;

std::string gaps_text(const GapVector& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.gaps.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c.gaps[i]);
  }
  return s + ")";
}

// 12 * R_NF for a path gap vector, exact in integers.
Wide path_twelfths(const GapVector& c) {
  const Wide first = c.gaps.front();
  const Wide last = c.gaps.back();
  Wide total = 3 * (first * first + last * last + first + last);
  for (std::size_t i = 1; i + 1 < c.gaps.size(); ++i) total += Wide(c.gaps[i]) * c.gaps[i] - 1;
  return total;
}

}  // namespace

std::size_t GapVector::leader_count() const {
  if (context == GapContext::Cycle) return gaps.size();
  return gaps.empty() ? 0 : gaps.size() - 1;
}

std::size_t GapVector::node_count() const {
  const std::size_t sum = std::accumulate(gaps.begin(), gaps.end(), std::size_t{0});
  return context == GapContext::Cycle ? sum : sum + 1;
}

GapVector cycle_gaps(std::size_t n, const LeaderSet& leaders) {
  if (leaders.empty()) fail(ErrorCode::EmptyLeaderSet, "cycle gap vector needs leaders");
  leaders.mask(n);
  GapVector c{GapContext::Cycle, {}};
  for (std::size_t i = 0; i + 1 < leaders.size(); ++i) c.gaps.push_back(leaders[i + 1] - leaders[i]);
  c.gaps.push_back(n - leaders[leaders.size() - 1] + leaders[0]);
  return c;
}

GapVector path_gaps(std::size_t n, const LeaderSet& leaders) {
  if (leaders.empty()) fail(ErrorCode::EmptyLeaderSet, "path gap vector needs leaders");
  leaders.mask(n);
  GapVector c{GapContext::Path, {leaders[0]}};
  for (std::size_t i = 0; i + 1 < leaders.size(); ++i) c.gaps.push_back(leaders[i + 1] - leaders[i]);
  c.gaps.push_back(n - 1 - leaders[leaders.size() - 1]);
  return c;
}

void validate_gaps(const GapVector& c) {
  if (c.context == GapContext::Cycle) {
    if (c.gaps.empty()) fail(ErrorCode::BadGapVector, "cycle gap vector is empty");
    for (std::size_t g : c.gaps) {
      if (g < 1) fail(ErrorCode::BadGapVector, "cycle gaps must be >= 1: " + gaps_text(c));
    }
    if (c.node_count() < 3) fail(ErrorCode::BadGapVector, "cycle needs n >= 3: " + gaps_text(c));
    return;
  }
  if (c.gaps.size() < 2) fail(ErrorCode::BadGapVector, "path gap vector needs k + 1 >= 2 entries");
  for (std::size_t i = 1; i + 1 < c.gaps.size(); ++i) {
    if (c.gaps[i] < 1) fail(ErrorCode::BadGapVector, "interior path gaps must be >= 1: " + gaps_text(c));
  }
}

LeaderSet cycle_leaders(const GapVector& c, NodeId first) {
  validate_gaps(c);
  if (c.context != GapContext::Cycle) fail(ErrorCode::BadGapVector, "expected a cycle gap vector");
  const std::size_t n = c.node_count();
  std::vector<NodeId> members{first % n};
  for (std::size_t i = 0; i + 1 < c.gaps.size(); ++i) members.push_back((members.back() + c.gaps[i]) % n);
  return LeaderSet(std::move(members));
}

LeaderSet path_leaders(const GapVector& c) {
  validate_gaps(c);
  if (c.context != GapContext::Path) fail(ErrorCode::BadGapVector, "expected a path gap vector");
  std::vector<NodeId> members{c.gaps.front()};
  for (std::size_t i = 1; i + 1 < c.gaps.size(); ++i) members.push_back(members.back() + c.gaps[i]);
  return LeaderSet(std::move(members));
}

double cycle_nf_coherence(const GapVector& c) {
  if (c.context != GapContext::Cycle) fail(ErrorCode::BadGapVector, "expected a cycle gap vector");
  validate_gaps(c);
  Wide total = 0;
  for (std::size_t g : c.gaps) total += Wide(g) * g;
  return static_cast<double>(total - c.gaps.size()) / 12.0;
}

CycleOptimum cycle_nf_optimal(std::size_t n, std::size_t k) {
  if (n < 3 || k < 1 || k > n) {
    fail(ErrorCode::BadParameter,
         "cycle optimum needs n >= 3 and 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  CycleOptimum opt;
  opt.base_gap = n / k;
  opt.remainder = n % k;
  opt.canonical.context = GapContext::Cycle;
  opt.canonical.gaps.assign(k - opt.remainder, opt.base_gap);
  opt.canonical.gaps.insert(opt.canonical.gaps.end(), opt.remainder, opt.base_gap + 1);
  opt.value = cycle_nf_coherence(opt.canonical);
  return opt;
}

bool in_cycle_optimal_family(const GapVector& c) {
  if (c.context != GapContext::Cycle || c.gaps.empty()) return false;
  const std::size_t base = c.node_count() / c.gaps.size();
  return std::all_of(c.gaps.begin(), c.gaps.end(),
                     [base](std::size_t g) { return g == base || g == base + 1; });
}

GapVector canonical_rotation(const GapVector& c) {
  GapVector best = c;
  GapVector rotated = c;
  for (std::size_t r = 1; r < c.gaps.size(); ++r) {
    std::rotate(rotated.gaps.begin(), rotated.gaps.begin() + 1, rotated.gaps.end());
    if (rotated.gaps < best.gaps) best = rotated;
  }
  return best;
}

double path_nf_coherence(const GapVector& c) {
  if (c.context != GapContext::Path) fail(ErrorCode::BadGapVector, "expected a path gap vector");
  validate_gaps(c);
  return static_cast<double>(path_twelfths(c)) / 12.0;
}

std::optional<GapVector> path_nf_rounded_gaps(std::size_t n, std::size_t k) {
  if (n < 2 || k < 1 || k > n) return std::nullopt;
  const double km1 = static_cast<double>(k - 1);
  const double relaxed = (2.0 * static_cast<double>(n - 1) - 3.0 * km1) / (6.0 * km1 + 4.0);
  const double end_gap = std::round(relaxed);  // halves round away from zero
  if (end_gap < 0.0) return std::nullopt;
  const auto end = static_cast<std::size_t>(end_gap);
  if (2 * end > n - 1) return std::nullopt;
  const std::size_t interior_total = n - 1 - 2 * end;
  GapVector c{GapContext::Path, {end}};
  if (k == 1) {
    if (interior_total != 0) return std::nullopt;
  } else {
    if (interior_total < k - 1 || interior_total % (k - 1) != 0) return std::nullopt;
    c.gaps.insert(c.gaps.end(), k - 1, interior_total / (k - 1));
  }
  c.gaps.push_back(end);
  return c;
}

PathOptimum path_nf_optimal(std::size_t n, std::size_t k) {
  if (n < 2 || k < 1 || k > n) {
    fail(ErrorCode::BadParameter,
         "path optimum needs n >= 2 and 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  GapVector c{GapContext::Path, std::vector<std::size_t>(k + 1, 1)};
  c.gaps.front() = 0;
  c.gaps.back() = 0;

  // Marginal cost of one more unit, in twelfths: end gap 6(c+1), interior 2c+1.
  auto marginal = [&](std::size_t idx) -> Wide {
    const Wide g = c.gaps[idx];
    return (idx == 0 || idx == k) ? 6 * (g + 1) : 2 * g + 1;
  };
  using Entry = std::pair<Wide, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t idx = 0; idx <= k; ++idx) heap.emplace(marginal(idx), idx);
  for (std::size_t unit = 0; unit < n - k; ++unit) {
    const auto [cost, idx] = heap.top();
    heap.pop();
    ++c.gaps[idx];
    heap.emplace(marginal(idx), idx);
  }

  PathOptimum opt;
  opt.gaps = c;
  if (const auto rounded = path_nf_rounded_gaps(n, k); rounded && path_twelfths(*rounded) == path_twelfths(c)) {
    opt.gaps = *rounded;
    opt.rounded_form_applies = true;
  }
  opt.leaders = path_leaders(opt.gaps);
  opt.value = path_nf_coherence(opt.gaps);
  return opt;
}

void validate_geometry(const TreeGeometry& g) {
  const bool ok = g.branching >= 2 && g.height >= 1 && g.x_to_y >= 1 && g.root_to_x <= g.x_to_y &&
                  g.root_to_x <= g.height && g.root_to_y() <= g.height;
  if (!ok) {
    fail(ErrorCode::BadGeometry, "M=" + std::to_string(g.branching) + " h=" + std::to_string(g.height) +
                                     " d_xr=" + std::to_string(g.root_to_x) +
                                     " d_xy=" + std::to_string(g.x_to_y));
  }
}

double tree_omega(const TreeGeometry& g) {
  validate_geometry(g);
  using Real = long double;
  const Real M = static_cast<Real>(g.branching);
  const Real h = static_cast<Real>(g.height);
  const Real dxr = static_cast<Real>(g.root_to_x);
  const Real dxy = static_cast<Real>(g.x_to_y);
  const Real m1 = M - 1;
  const Real top = std::pow(M, h + 1);

  const Real split = (top + 1) / m1 * (dxr - dxr * dxr / dxy);
  const Real branches =
      top * (2 / (m1 * m1) + (M + 1) / (m1 * m1 * m1 * dxy)) * (std::pow(M, dxr - dxy) + std::pow(M, -dxr));
  const Real bulk = top * (h / m1 - 3 / (m1 * m1) - 2 * (M + 1) / (m1 * m1 * m1 * dxy));
  const Real tail = dxy / m1 + M / (m1 * m1);
  return static_cast<double>(split + branches + bulk + tail);
}

std::pair<NodeId, NodeId> place_tree_leaders(const PerfectTree& tree, const TreeGeometry& g) {
  validate_geometry(g);
  if (g.branching != tree.branching || g.height != tree.height) {
    fail(ErrorCode::BadGeometry, "geometry does not match the tree");
  }
  const std::size_t M = tree.branching;
  auto descend = [M](NodeId start, std::size_t steps) {
    for (std::size_t s = 0; s < steps; ++s) start = M * start + 1;
    return start;
  };
  // First child of the root is 1, second is 2.
  const std::size_t dxr = g.root_to_x;
  const std::size_t dyr = g.root_to_y();
  const NodeId x = dxr == 0 ? 0 : descend(1, dxr - 1);
  NodeId y = 0;
  if (dyr > 0) y = descend(dxr == 0 ? 1 : 2, dyr - 1);
  return {x, y};
}

std::optional<TreeGeometry> tree_pair_geometry(const PerfectTree& tree, NodeId a, NodeId b) {
  if (a == b || !tree.graph.contains(a) || !tree.graph.contains(b)) return std::nullopt;
  if (lowest_common_ancestor(tree.parent, tree.level, a, b) != 0) return std::nullopt;
  const std::size_t la = tree.level[a];
  const std::size_t lb = tree.level[b];
  return TreeGeometry{tree.branching, tree.height, std::min(la, lb), la + lb};
}

TreeOptimum tree_optimal_two(std::size_t branching, std::size_t height) {
  if (branching < 2) fail(ErrorCode::BadParameter, "tree branching must be >= 2");
  TreeOptimum opt;
  if (height >= 4) {
    if (branching == 2) {
      opt.geometry = {2, height, 2, 4};
    } else if (branching == 3) {
      opt.geometry = {3, height, 1, 2};
    } else {
      opt.geometry = {branching, height, 0, 1};
    }
    opt.value = tree_omega(opt.geometry) / 2.0;
    return opt;
  }
  if (height == 0) fail(ErrorCode::BadParameter, "a single-node tree cannot hold two leaders");

  opt.height_too_small = true;
  const PerfectTree tree = build_perfect_tree(branching, height);
  const SelectionResult search = brute_force_select(tree.graph, 2, Dynamics::NoiseFree);
  for (const LeaderSet& s : search.optimal_sets) {
    if (const auto geom = tree_pair_geometry(tree, s[0], s[1])) {
      opt.geometry = *geom;
      opt.value = search.value;
      return opt;
    }
  }
  fail(ErrorCode::NotApplicable, "no optimal pair has the root as lowest common ancestor");
}

double tree_optimal_value_by_size(std::size_t branching, std::size_t n) {
  const double N = static_cast<double>(n);
  if (branching == 2) return (N + 1) / 2 * (std::log2(N + 1) - 25.0 / 8.0) + 3.5;
  if (branching == 3) return (2 * N + 1) / 4 * (std::log(2 * N + 1) / std::log(3.0) - 2) + 1;
  if (branching < 2) fail(ErrorCode::BadParameter, "tree branching must be >= 2");
  const double M = static_cast<double>(branching);
  return 0.5 * (N + 1 / (M - 1)) * (std::log(N * M - N + 1) / std::log(M)) -
         N * (M * M + M - 1) / (2 * M * (M - 1)) + 1 / (2 * M);
}

double cycle_nc_two_coherence(std::size_t n, std::size_t i, CycleNcMethod method) {
  if (n < 3 || i < 1 || i > n) {
    fail(ErrorCode::BadParameter,
         "need n >= 3 and 1 <= i <= n, got n=" + std::to_string(n) + " i=" + std::to_string(i));
  }
  if (method == CycleNcMethod::Trace) {
    return coherence_nc(build_cycle(n), LeaderSet{0, i - 1}, StubbornnessMap{}).value;
  }
  if (i < 2) fail(ErrorCode::BadParameter, "the polynomial forms need distinct leaders (i >= 2)");
  using Real = long double;
  const Real N = static_cast<Real>(n);
  const Real I = static_cast<Real>(i);
  const Real cubic_like = method == CycleNcMethod::PrintedPolynomial ? I * I * I : I * I;
  const Real bracket = 2 * std::pow(I, 4) - 4 * std::pow(I, 3) * (N + 2) +
                       cubic_like * (2 * N * N + 6 * N + 11) + I * (2 * N * N + N - 6) + 2 * N * N - 3 * N + 1;
  const Real denom = 12 * N * (2 + (I - 1) * (N - (I - 1)) / N);
  return static_cast<double>((N * N + 6 * N - 1) / 12 - bracket / denom);
}

double cycle_nc_optimal_value(std::size_t n) {
  if (n % 2 != 0) fail(ErrorCode::OddN, "n=" + std::to_string(n) + " is odd");
  if (n < 4) fail(ErrorCode::BadParameter, "need n >= 4");
  const double N = static_cast<double>(n);
  return (N * N * N + 16 * N * N + 44 * N - 16) / (24 * (N + 8));
}

}  // namespace coherence_lab
