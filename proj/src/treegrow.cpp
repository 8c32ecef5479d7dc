#include "coherence_lab/treegrow.hpp"

#include <algorithm>

#include "coherence_lab/coherence.hpp"
#include "coherence_lab/error.hpp"
#include "coherence_lab/leaders.hpp"
#include "coherence_lab/selection.hpp"

namespace coherence_lab {

GrowingTree GrowingTree::init(std::size_t h0) {
  if (h0 < 4) fail(ErrorCode::HeightTooSmall, "growth starts from height >= 4, got " + std::to_string(h0));
  const PerfectTree perfect = build_perfect_tree(2, h0);
  GrowingTree t;
  t.parent_ = perfect.parent;
  t.level_ = perfect.level;
  t.children_.resize(t.parent_.size());
  t.by_level_.resize(h0 + 2);
  for (NodeId v = 0; v < t.parent_.size(); ++v) {
    if (v > 0) t.children_[t.parent_[v]].push_back(v);
    t.by_level_[t.level_[v]].push_back(v);
  }
  t.height_ = h0;
  // Leftmost depth-2 node under each child of the root.
  t.leaders_ = {3, 5};
  return t;
}

bool GrowingTree::is_descendant(NodeId node, NodeId ancestor) const {
  while (node != kNoNode) {
    if (node == ancestor) return true;
    node = parent_[node];
  }
  return false;
}

std::size_t GrowingTree::new_leaves_under(NodeId subtree_root) const {
  const auto& frontier = by_level_[height_ + 1];
  return static_cast<std::size_t>(std::count_if(frontier.begin(), frontier.end(),
                                                [&](NodeId v) { return is_descendant(v, subtree_root); }));
}

NodeId GrowingTree::leftmost_open_slot(NodeId subtree_root) const {
  for (NodeId v : by_level_[height_]) {
    if (children_[v].size() < 2 && (subtree_root == kNoNode || is_descendant(v, subtree_root))) return v;
  }
  return kNoNode;
}

NodeId GrowingTree::attach(NodeId parent) {
  const NodeId node = parent_.size();
  parent_.push_back(parent);
  level_.push_back(level_[parent] + 1);
  children_.emplace_back();
  children_[parent].push_back(node);

  const auto& parents_row = by_level_[height_];
  auto rank = [&](NodeId v) {
    const NodeId p = parent_[v];
    const auto pos = std::find(parents_row.begin(), parents_row.end(), p) - parents_row.begin();
    const auto slot = std::find(children_[p].begin(), children_[p].end(), v) - children_[p].begin();
    return std::pair{pos, slot};
  };
  auto& row = by_level_[height_ + 1];
  row.push_back(node);
  std::sort(row.begin(), row.end(), [&](NodeId a, NodeId b) { return rank(a) < rank(b); });

  if (row.size() == 2 * parents_row.size()) {
    ++height_;
    by_level_.emplace_back();
  }
  return node;
}

NodeId GrowingTree::grow_step() {
  for (NodeId leader : leaders_) {
    NodeId chosen = kNoNode;
    std::size_t fewest = 0;
    for (NodeId child : children_[leader]) {
      const NodeId slot = leftmost_open_slot(child);
      if (slot == kNoNode) continue;
      const std::size_t leaves = new_leaves_under(child);
      if (chosen == kNoNode || leaves < fewest) {
        chosen = slot;
        fewest = leaves;
      }
    }
    if (chosen != kNoNode) {
      attach(chosen);
      return chosen;
    }
  }
  const NodeId slot = leftmost_open_slot(kNoNode);
  attach(slot);
  return slot;
}

Graph GrowingTree::graph() const {
  std::vector<Edge> edges;
  edges.reserve(parent_.size());
  for (NodeId v = 1; v < parent_.size(); ++v) edges.push_back({parent_[v], v, 1.0});
  return Graph::from_edges(edges, parent_.size());
}

namespace {

std::size_t tree_distance(const GrowingTree& t, NodeId a, NodeId b) {
  const NodeId lca = lowest_common_ancestor(t.parents(), t.levels(), a, b);
  return t.levels()[a] + t.levels()[b] - 2 * t.levels()[lca];
}

TrajectoryRow make_row(const GrowingTree& t, const Graph& g, std::size_t step, long id, NodeId a, NodeId b) {
  TrajectoryRow row{.step = step, .pair_id = id, .x = a, .y = b};
  row.d_xr = t.levels()[a];
  row.d_yr = t.levels()[b];
  row.d_xy = tree_distance(t, a, b);
  row.value = coherence_nf(g, LeaderSet{a, b}).value;
  return row;
}

}  // namespace

std::vector<TrajectoryRow> growth_trajectory(std::size_t h0, std::size_t steps, const GrowthOptions& options) {
  GrowingTree tree = GrowingTree::init(h0);
  const NodeId x = tree.first_leader();
  const NodeId y = tree.second_leader();

  std::vector<TrajectoryRow> rows;
  for (std::size_t step = 0; step <= steps; ++step) {
    if (step > 0) tree.grow_step();
    const Graph g = tree.graph();

    // Nodes at depth <= max_depth are never relabelled by growth.
    std::vector<NodeId> shallow;
    for (NodeId v = 0; v < tree.node_count(); ++v) {
      if (tree.levels()[v] <= options.max_depth) shallow.push_back(v);
    }

    rows.push_back(make_row(tree, g, step, 0, x, y));
    long id = 1;
    for (std::size_t i = 0; i < shallow.size(); ++i) {
      for (std::size_t j = i + 1; j < shallow.size(); ++j) {
        if (shallow[i] == x && shallow[j] == y) continue;
        rows.push_back(make_row(tree, g, step, id++, shallow[i], shallow[j]));
      }
    }
    if (options.include_global) {
      const SelectionResult best = brute_force_select(g, 2, Dynamics::NoiseFree);
      const LeaderSet& pair = best.optimal_sets.front();
      TrajectoryRow row = make_row(tree, g, step, -1, pair[0], pair[1]);
      row.value = best.value;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string marked_tree_signature(const std::vector<std::vector<NodeId>>& children, NodeId a, NodeId b) {
  // AHU-style canonical form; children codes sorted so sibling order is irrelevant.
  std::vector<std::string> code(children.size());
  std::vector<NodeId> order{0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (NodeId c : children[order[i]]) order.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    std::vector<std::string> parts;
    parts.reserve(children[v].size());
    for (NodeId c : children[v]) parts.push_back(code[c]);
    std::sort(parts.begin(), parts.end());
    std::string s = (v == a || v == b) ? "(*" : "(";
    for (auto& p : parts) s += p;
    s += ")";
    code[v] = std::move(s);
    for (NodeId c : children[v]) std::string().swap(code[c]);
  }
  return code[0];
}

}  // namespace coherence_lab
