#include "coherence_lab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "coherence_lab/error.hpp"

namespace coherence_lab {

Graph Graph::from_edges(std::span<const Edge> edges, std::size_t min_nodes) {
  std::size_t n = min_nodes;
  std::set<std::pair<NodeId, NodeId>> seen;
  Graph g;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      fail(ErrorCode::SelfLoop, "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      fail(ErrorCode::BadWeight, "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                     ") has weight " + std::to_string(e.weight));
    }
    const auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) {
      fail(ErrorCode::DuplicateEdge,
           "pair {" + std::to_string(key.first) + ", " + std::to_string(key.second) + "}");
    }
    n = std::max(n, std::max(e.u, e.v) + 1);
    g.edges_.push_back({key.first, key.second, e.weight});
  }
  g.adjacency_.resize(n);
  for (const Edge& e : g.edges_) {
    g.adjacency_[e.u].push_back({e.v, e.weight});
    g.adjacency_[e.v].push_back({e.u, e.weight});
  }
  return g;
}

std::optional<double> Graph::edge_weight(NodeId u, NodeId v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  for (const Neighbor& nb : adjacency_[u]) {
    if (nb.node == v) return nb.weight;
  }
  return std::nullopt;
}

double Graph::weighted_degree(NodeId v) const {
  double d = 0.0;
  for (const Neighbor& nb : adjacency_.at(v)) d += nb.weight;
  return d;
}

Graph build_graph(std::span<const Edge> edges, std::size_t min_nodes) {
  if (edges.empty() && min_nodes == 0) {
    fail(ErrorCode::BadParameter, "graph needs at least one node");
  }
  return Graph::from_edges(edges, min_nodes);
}

Eigen::MatrixXd laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    L(u, u) += e.weight;
    L(v, v) += e.weight;
    L(u, v) -= e.weight;
    L(v, u) -= e.weight;
  }
  return L;
}

Eigen::SparseMatrix<double> laplacian_sparse(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * g.edge_count());
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    triplets.emplace_back(u, u, e.weight);
    triplets.emplace_back(v, v, e.weight);
    triplets.emplace_back(u, v, -e.weight);
    triplets.emplace_back(v, u, -e.weight);
  }
  Eigen::SparseMatrix<double> L(n, n);
  L.setFromTriplets(triplets.begin(), triplets.end());
  return L;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!seen[nb.node]) {
        seen[nb.node] = true;
        ++reached;
        stack.push_back(nb.node);
      }
    }
  }
  return reached == n;
}

std::vector<double> distances_from(const Graph& g, NodeId source) {
  if (!g.contains(source)) {
    fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(source));
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.node_count(), inf);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (const Neighbor& nb : g.neighbors(v)) {
      const double candidate = d + nb.weight;
      if (candidate < dist[nb.node]) {
        dist[nb.node] = candidate;
        heap.emplace(candidate, nb.node);
      }
    }
  }
  return dist;
}

double graph_distance(const Graph& g, NodeId u, NodeId v) {
  if (!g.contains(v)) fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(v));
  const double d = distances_from(g, u)[v];
  if (std::isinf(d)) {
    fail(ErrorCode::Unreachable,
         "nodes " + std::to_string(u) + " and " + std::to_string(v) + " are in different components");
  }
  return d;
}

Graph build_cycle(std::size_t n) {
  if (n < 3) fail(ErrorCode::BadParameter, "cycle needs n >= 3, got " + std::to_string(n));
  std::vector<Edge> edges;
  edges.reserve(n);
  for (NodeId i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph::from_edges(edges, n);
}

Graph build_path(std::size_t n) {
  if (n < 2) fail(ErrorCode::BadParameter, "path needs n >= 2, got " + std::to_string(n));
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph::from_edges(edges, n);
}

std::size_t perfect_tree_size(std::size_t branching, std::size_t height) {
  std::size_t total = 0;
  std::size_t layer = 1;
  for (std::size_t l = 0; l <= height; ++l) {
    total += layer;
    layer *= branching;
  }
  return total;
}

PerfectTree build_perfect_tree(std::size_t branching, std::size_t height) {
  if (branching < 2) {
    fail(ErrorCode::BadParameter, "tree branching must be >= 2, got " + std::to_string(branching));
  }
  if (height > 24 || perfect_tree_size(branching, height) > 50'000'000) {
    fail(ErrorCode::BadParameter, "tree too large");
  }
  PerfectTree tree;
  tree.branching = branching;
  tree.height = height;
  const std::size_t n = perfect_tree_size(branching, height);
  tree.level.assign(n, 0);
  tree.parent.assign(n, kNoNode);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (NodeId child = 1; child < n; ++child) {
    const NodeId p = (child - 1) / branching;
    tree.parent[child] = p;
    tree.level[child] = tree.level[p] + 1;
    edges.push_back({p, child, 1.0});
  }
  tree.graph = Graph::from_edges(edges, n);
  return tree;
}

NodeId lowest_common_ancestor(std::span<const NodeId> parent, std::span<const std::size_t> level,
                              NodeId a, NodeId b) {
  while (level[a] > level[b]) a = parent[a];
  while (level[b] > level[a]) b = parent[b];
  while (a != b) {
    a = parent[a];
    b = parent[b];
  }
  return a;
}

}  // namespace coherence_lab
