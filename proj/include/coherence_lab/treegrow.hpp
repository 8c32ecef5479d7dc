#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "coherence_lab/graph.hpp"

namespace coherence_lab {

/// A binary tree grown one leaf at a time from a perfect tree of height
/// h0 >= 4, keeping the designated leader pair (both at depth 2, in different
/// subtrees of the root) in place.
class GrowingTree {
 public:
  /// Perfect binary tree of height h0 in breadth-first labeling; leaders are
  /// the leftmost depth-2 node of each root subtree. Throws HeightTooSmall.
  static GrowingTree init(std::size_t h0);

  /// Adds one leaf on level height()+1 and returns its parent. Slots under the
  /// first leader come first (child subtree with fewer new leaves, left on
  /// ties), then the second leader, then the leftmost free slot anywhere.
  NodeId grow_step();

  std::size_t node_count() const { return parent_.size(); }
  /// Height of the completed part; level height()+1 may be partially filled.
  std::size_t height() const { return height_; }
  NodeId first_leader() const { return leaders_[0]; }
  NodeId second_leader() const { return leaders_[1]; }

  const std::vector<NodeId>& parents() const { return parent_; }
  const std::vector<std::size_t>& levels() const { return level_; }
  const std::vector<std::vector<NodeId>>& children() const { return children_; }

  Graph graph() const;

  /// Nodes of one level in left-to-right order.
  const std::vector<NodeId>& level_order(std::size_t level) const { return by_level_.at(level); }

 private:
  bool is_descendant(NodeId node, NodeId ancestor) const;
  std::size_t new_leaves_under(NodeId subtree_root) const;
  NodeId leftmost_open_slot(NodeId subtree_root) const;  // kNoNode when full
  NodeId attach(NodeId parent);

  std::vector<NodeId> parent_;
  std::vector<std::size_t> level_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::vector<NodeId>> by_level_;
  std::size_t height_ = 0;
  std::array<NodeId, 2> leaders_{};
};

/// One (step, pair) sample of the growth experiment.
struct TrajectoryRow {
  std::size_t step = 0;
  long pair_id = 0;  // 0 is the designated pair; -1 the global optimum row
  NodeId x = 0;
  NodeId y = 0;
  std::size_t d_xr = 0;
  std::size_t d_yr = 0;
  std::size_t d_xy = 0;
  double value = 0.0;
};

struct GrowthOptions {
  std::size_t max_depth = 3;      // comparison pairs have both nodes at depth <= this
  bool include_global = false;    // also emit the exhaustive 2-leader optimum per step
};

/// Noise-free coherence of the designated pair and every comparison pair at
/// steps 0..steps. Rows for a step are ordered by pair_id.
std::vector<TrajectoryRow> growth_trajectory(std::size_t h0, std::size_t steps, const GrowthOptions& options = {});

/// Canonical encoding of the rooted tree with nodes a and b marked; equal
/// encodings mean some rooted automorphism maps one marked pair to the other.
std::string marked_tree_signature(const std::vector<std::vector<NodeId>>& children, NodeId a, NodeId b);

}  // namespace coherence_lab
