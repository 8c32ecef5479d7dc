#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace coherence_lab {

using NodeId = std::size_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node;
  double weight;
};

/// Weighted undirected simple graph on nodes 0..node_count()-1.
///
/// Immutable after construction. Edges are stored with u < v in insertion
/// order; adjacency lists are symmetric.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. node_count is max(1 + largest id, min_nodes).
  static Graph from_edges(std::span<const Edge> edges, std::size_t min_nodes = 0);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(NodeId v) const { return adjacency_.at(v); }

  std::optional<double> edge_weight(NodeId u, NodeId v) const;
  double weighted_degree(NodeId v) const;
  bool contains(NodeId v) const { return v < node_count(); }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// build_graph: node_count = 1 + max id (or min_nodes when larger).
Graph build_graph(std::span<const Edge> edges, std::size_t min_nodes = 0);

Eigen::MatrixXd laplacian(const Graph& g);
Eigen::SparseMatrix<double> laplacian_sparse(const Graph& g);

bool is_connected(const Graph& g);

/// Shortest weighted path length (Dijkstra). Throws Unreachable.
double graph_distance(const Graph& g, NodeId u, NodeId v);

/// Distances from one source; unreachable nodes get +infinity.
std::vector<double> distances_from(const Graph& g, NodeId source);

Graph build_cycle(std::size_t n);
Graph build_path(std::size_t n);

/// Perfect M-ary tree in breadth-first labeling: node p has children
/// M*p+1 .. M*p+M, root 0 at level 0.
struct PerfectTree {
  Graph graph;
  std::size_t branching = 0;
  std::size_t height = 0;
  std::vector<std::size_t> level;
  std::vector<NodeId> parent;  // kNoNode for the root
};

PerfectTree build_perfect_tree(std::size_t branching, std::size_t height);

std::size_t perfect_tree_size(std::size_t branching, std::size_t height);

/// Lowest common ancestor given a parent map and levels.
NodeId lowest_common_ancestor(std::span<const NodeId> parent,
                              std::span<const std::size_t> level, NodeId a, NodeId b);

}  // namespace coherence_lab
