#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "coherence_lab/graph.hpp"
#include "coherence_lab/leaders.hpp"

namespace coherence_lab {

enum class GapContext { Cycle, Path };

/// Inter-leader distances. Cycle: k gaps summing to n, each >= 1.
/// Path: k + 1 gaps summing to n - 1; the two end gaps may be 0.
struct GapVector {
  GapContext context = GapContext::Cycle;
  std::vector<std::size_t> gaps;

  std::size_t leader_count() const;
  std::size_t node_count() const;

  friend bool operator==(const GapVector&, const GapVector&) = default;
};

/// Gap vector of a leader set on the n-node cycle/path (0-based labels).
GapVector cycle_gaps(std::size_t n, const LeaderSet& leaders);
GapVector path_gaps(std::size_t n, const LeaderSet& leaders);

/// Inverse maps; the cycle variant places the first leader at `first`.
LeaderSet cycle_leaders(const GapVector& c, NodeId first = 0);
LeaderSet path_leaders(const GapVector& c);

/// Throws BadGapVector unless the invariants for c.context hold.
void validate_gaps(const GapVector& c);

/// (c'c - k) / 12.
double cycle_nf_coherence(const GapVector& c);

struct CycleOptimum {
  std::size_t base_gap = 0;   // l in n = k l + q
  std::size_t remainder = 0;  // q
  GapVector canonical;        // lexicographically smallest rotation: l's then (l+1)'s
  double value = 0.0;
};

CycleOptimum cycle_nf_optimal(std::size_t n, std::size_t k);

/// Whether every gap is l or l + 1 for n = k l + q (the optimal family).
bool in_cycle_optimal_family(const GapVector& c);

/// Lexicographically smallest rotation of a cycle gap vector.
GapVector canonical_rotation(const GapVector& c);

/// 1/4 (c_1^2 + c_{k+1}^2 + c_1 + c_{k+1}) + 1/12 sum_{i=2..k} (c_i^2 - 1).
double path_nf_coherence(const GapVector& c);

struct PathOptimum {
  GapVector gaps;
  LeaderSet leaders;
  double value = 0.0;
  /// True when the rounded symmetric placement (equal end gaps, equal
  /// interior gaps) is feasible and attains the optimum; gaps is then that
  /// placement.
  bool rounded_form_applies = false;
};

/// Exact optimum by greedy marginal allocation on the separable convex objective.
PathOptimum path_nf_optimal(std::size_t n, std::size_t k);

/// End gap round((2(n-1) - 3(k-1)) / (6(k-1) + 4)) and equal interior gaps,
/// when those are integral and feasible.
std::optional<GapVector> path_nf_rounded_gaps(std::size_t n, std::size_t k);

/// Two leaders x, y in a perfect M-ary tree whose lowest common ancestor is the root.
struct TreeGeometry {
  std::size_t branching = 2;  // M
  std::size_t height = 0;     // h
  std::size_t root_to_x = 0;  // d_xr
  std::size_t x_to_y = 1;     // d_xy

  std::size_t root_to_y() const { return x_to_y - root_to_x; }
  friend bool operator==(const TreeGeometry&, const TreeGeometry&) = default;
};

void validate_geometry(const TreeGeometry& geom);

/// Omega = 2 R_NF for the two-leader placement (requires h >= 1).
double tree_omega(const TreeGeometry& geom);

/// Concrete leader nodes realizing geom in build_perfect_tree(M, h): x on the
/// leftmost descent of the root's first child, y on the leftmost descent of
/// the second child (or the root when its distance is 0).
std::pair<NodeId, NodeId> place_tree_leaders(const PerfectTree& tree, const TreeGeometry& geom);

/// Geometry of an arbitrary pair; nullopt unless their LCA is the root.
std::optional<TreeGeometry> tree_pair_geometry(const PerfectTree& tree, NodeId a, NodeId b);

struct TreeOptimum {
  TreeGeometry geometry;
  double value = 0.0;
  /// Set for h < 4: the closed-form placements do not hold and the result comes
  /// from exhaustive search over all node pairs.
  bool height_too_small = false;
};

TreeOptimum tree_optimal_two(std::size_t branching, std::size_t height);

/// Optimal two-leader value written in terms of the node count n
/// (binary, ternary and M >= 4 cases).
double tree_optimal_value_by_size(std::size_t branching, std::size_t n);

enum class CycleNcMethod { Trace, PrintedPolynomial, CorrectedPolynomial };

/// R_NC for the unit cycle with unit-stubborn leaders at 1-based labels 1 and i.
/// The polynomial forms are defined for 2 <= i <= n.
double cycle_nc_two_coherence(std::size_t n, std::size_t i, CycleNcMethod method = CycleNcMethod::Trace);

/// (n^3 + 16n^2 + 44n - 16) / (24 (n + 8)) for even n >= 4; throws OddN.
double cycle_nc_optimal_value(std::size_t n);

}  // namespace coherence_lab
