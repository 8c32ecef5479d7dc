#include "coherence_lab/electrical.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "coherence_lab/error.hpp"
#include "grounded.hpp"

namespace coherence_lab {

namespace {

void require_node(const Graph& g, NodeId v) {
  if (!g.contains(v)) {
    fail(ErrorCode::NodeOutOfRange,
         "node " + std::to_string(v) + " outside graph of " + std::to_string(g.node_count()) + " nodes");
  }
}

void require_connected(const Graph& g) {
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
}

}  // namespace

double resistance(const Graph& g, NodeId i, NodeId j) {
  require_node(g, i);
  require_node(g, j);
  if (i == j) fail(ErrorCode::SameNode, "resistance needs two distinct nodes");
  require_connected(g);
  std::vector<bool> grounded(g.node_count(), false);
  grounded[j] = true;
  return detail::GroundedSystem(g, grounded, {}).inverse_entry(i);
}

double resistance_to_set(const Graph& g, NodeId i, const LeaderSet& leaders) {
  if (leaders.empty()) fail(ErrorCode::EmptyLeaderSet, "resistance to an empty set");
  require_node(g, i);
  const auto grounded = leaders.mask(g.node_count());
  if (grounded[i]) fail(ErrorCode::LeaderQueried, "node " + std::to_string(i) + " is a leader");
  require_connected(g);
  return detail::GroundedSystem(g, grounded, {}).inverse_entry(i);
}

AugmentedGraph augment_graph(const Graph& g, const LeaderSet& leaders, const StubbornnessMap& kappa) {
  if (leaders.empty()) fail(ErrorCode::EmptyLeaderSet, "augmented graph needs at least one leader");
  leaders.mask(g.node_count());
  AugmentedGraph out;
  out.sink = g.node_count();
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (NodeId s : leaders) {
    const double k = kappa.at(s);
    if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorCode::BadKappa, "leader " + std::to_string(s));
    edges.push_back({s, out.sink, k});
    out.attachment.emplace(s, k);
  }
  out.graph = Graph::from_edges(edges, g.node_count() + 1);
  return out;
}

ResistanceOracle::ResistanceOracle(const Graph& g) {
  require_connected(g);
  const auto n = static_cast<Eigen::Index>(g.node_count());
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd shifted = laplacian(g);
  shifted.array() += inv_n;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) fail(ErrorCode::Disconnected, "Laplacian factorization failed");
  pinv_ = llt.solve(Eigen::MatrixXd::Identity(n, n));
  pinv_.array() -= inv_n;
  pinv_ = 0.5 * (pinv_ + pinv_.transpose()).eval();

  const Eigen::VectorXd d = pinv_.diagonal();
  table_ = (d.replicate(1, n) + d.transpose().replicate(n, 1) - 2.0 * pinv_).cwiseMax(0.0);
  table_.diagonal().setZero();
  row_sums_ = table_.rowwise().sum();
}

double ResistanceOracle::two_leader_resistance(NodeId u, NodeId x, NodeId y) const {
  if (x == y) return (*this)(u, x);
  const double rxy = (*this)(x, y);
  const double a_uu = (*this)(u, x);
  const double a_uy = 0.5 * ((*this)(u, x) + rxy - (*this)(u, y));
  return a_uu - a_uy * a_uy / rxy;
}

double ResistanceOracle::two_leader_total(NodeId x, NodeId y) const {
  if (x == y) return total_resistance_to(x);
  const auto xi = static_cast<Eigen::Index>(x);
  const auto yi = static_cast<Eigen::Index>(y);
  const double rxy = table_(xi, yi);
  const auto rx = table_.col(xi);
  const auto ry = table_.col(yi);
  const double cross = (0.5 * (rx.array() + rxy - ry.array())).square().sum();
  return row_sums_(xi) - cross / rxy;
}

double edge_addition_update(const ResistanceOracle& oracle, NodeId i, NodeId j, double w, NodeId p,
                            NodeId q) {
  const std::size_t n = oracle.node_count();
  for (NodeId v : {i, j, p, q}) {
    if (v >= n) fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(v));
  }
  if (i == j) fail(ErrorCode::SameNode, "added edge must join two distinct nodes");
  if (!(w > 0.0) || !std::isfinite(w)) fail(ErrorCode::BadWeight, "added edge weight " + std::to_string(w));
  const double mismatch = oracle(p, i) + oracle(q, j) - oracle(p, j) - oracle(q, i);
  return oracle(p, q) - w * mismatch * mismatch / (4.0 * (1.0 + w * oracle(i, j)));
}

double path_two_point_resistance(double d_ux, double d_xy) {
  if (!(d_ux > 0.0) || !(d_ux < d_xy) || !std::isfinite(d_xy)) {
    fail(ErrorCode::OutOfRange, "need 0 < d_ux < d_xy, got d_ux=" + std::to_string(d_ux) +
                                    " d_xy=" + std::to_string(d_xy));
  }
  return d_ux - d_ux * d_ux / d_xy;
}

}  // namespace coherence_lab
