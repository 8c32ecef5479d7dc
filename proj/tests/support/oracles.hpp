#pragma once

// Dense reference computations used only by the tests. They go through LU
// and eigendecompositions, never through the library's Cholesky routes.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coherence_lab/graph.hpp"
#include "coherence_lab/leaders.hpp"

namespace oracle {

using coherence_lab::Edge;
using coherence_lab::Graph;
using coherence_lab::LeaderSet;
using coherence_lab::NodeId;

inline Eigen::MatrixXd dense_laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    L(u, u) += e.weight;
    L(v, v) += e.weight;
    L(u, v) -= e.weight;
    L(v, u) -= e.weight;
  }
  return L;
}

inline std::vector<Eigen::Index> complement(std::size_t n, const LeaderSet& s) {
  std::vector<Eigen::Index> keep;
  for (NodeId v = 0; v < n; ++v) {
    if (!s.contains(v)) keep.push_back(static_cast<Eigen::Index>(v));
  }
  return keep;
}

inline Eigen::MatrixXd principal(const Eigen::MatrixXd& a, const std::vector<Eigen::Index>& keep) {
  const auto m = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = a(keep[i], keep[j]);
  }
  return out;
}

inline Eigen::MatrixXd lu_inverse(const Eigen::MatrixXd& a) { return a.fullPivLu().inverse(); }

// 1/2 tr(L_ff^-1)
inline double nf(const Graph& g, const LeaderSet& s) {
  const auto keep = complement(g.node_count(), s);
  if (keep.empty()) return 0.0;
  return 0.5 * lu_inverse(principal(dense_laplacian(g), keep)).trace();
}

// 1/2 tr((L + D_kappa D_S)^-1) with one kappa for every leader.
inline double nc(const Graph& g, const LeaderSet& s, double kappa = 1.0) {
  Eigen::MatrixXd a = dense_laplacian(g);
  for (NodeId v : s) a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) += kappa;
  return 0.5 * lu_inverse(a).trace();
}

// Eigenvalue form of the pseudoinverse.
inline Eigen::MatrixXd pinv(const Graph& g) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_laplacian(g));
  const auto n = eig.eigenvalues().size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues()(k);
    if (lambda > 1e-9) out += eig.eigenvectors().col(k) * eig.eigenvectors().col(k).transpose() / lambda;
  }
  return out;
}

inline double leader_free(const Graph& g) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_laplacian(g));
  double total = 0.0;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    if (eig.eigenvalues()(k) > 1e-9) total += 1.0 / eig.eigenvalues()(k);
  }
  return 0.5 * total;
}

// Resistance by definition: delete row and column j, invert, take (i, i).
inline double resistance(const Graph& g, NodeId i, NodeId j) {
  std::vector<Eigen::Index> keep;
  Eigen::Index pos = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == j) continue;
    if (v == i) pos = static_cast<Eigen::Index>(keep.size());
    keep.push_back(static_cast<Eigen::Index>(v));
  }
  return lu_inverse(principal(dense_laplacian(g), keep))(pos, pos);
}

inline double resistance_to_set(const Graph& g, NodeId i, const LeaderSet& s) {
  const auto keep = complement(g.node_count(), s);
  const auto pos = std::find(keep.begin(), keep.end(), static_cast<Eigen::Index>(i)) - keep.begin();
  return lu_inverse(principal(dense_laplacian(g), keep))(pos, pos);
}

inline double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Connected graph: random spanning tree plus extra edges, weights in [wlo, whi].
inline Graph random_connected(std::mt19937_64& rng, std::size_t n, double extra_density = 0.15, double wlo = 0.5,
                              double whi = 2.0, bool unit = false) {
  std::uniform_real_distribution<double> weight(wlo, whi);
  std::bernoulli_distribution extra(extra_density);
  std::vector<Edge> edges;
  std::set<std::pair<NodeId, NodeId>> used;
  for (NodeId v = 1; v < n; ++v) {
    const NodeId p = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
    edges.push_back({p, v, unit ? 1.0 : weight(rng)});
    used.insert({p, v});
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (!used.count({u, v}) && extra(rng)) edges.push_back({u, v, unit ? 1.0 : weight(rng)});
    }
  }
  return Graph::from_edges(edges, n);
}

inline LeaderSet random_leaders(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(k, n));
  return LeaderSet(all);
}

// All k-subsets of [0, n) in lexicographic order.
inline std::vector<LeaderSet> all_subsets(std::size_t n, std::size_t k) {
  std::vector<LeaderSet> out;
  std::vector<NodeId> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = i;
  while (true) {
    out.emplace_back(comb);
    std::size_t pos = k;
    while (pos > 0 && comb[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++comb[pos - 1];
    for (std::size_t j = pos; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

}  // namespace oracle
