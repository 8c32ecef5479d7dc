#pragma once

#include <map>

#include <Eigen/Dense>

#include "coherence_lab/graph.hpp"
#include "coherence_lab/leaders.hpp"

namespace coherence_lab {

/// Effective resistance r(i, j): the (i, i) entry of the inverse of L with
/// row and column j removed. Throws Disconnected or SameNode.
double resistance(const Graph& g, NodeId i, NodeId j);

/// r(i, S): the (i, i) entry of the inverse of the grounded Laplacian L_ff.
/// Equivalent to shorting every leader into one grounded node.
double resistance_to_set(const Graph& g, NodeId i, const LeaderSet& leaders);

/// Graph plus one appended node tied to each leader by an edge of weight kappa.
struct AugmentedGraph {
  Graph graph;
  NodeId sink = kNoNode;
  std::map<NodeId, double> attachment;
};

AugmentedGraph augment_graph(const Graph& g, const LeaderSet& leaders, const StubbornnessMap& kappa);

/// All-pairs resistance table from the Laplacian pseudoinverse,
/// r(i, j) = L+(i,i) + L+(j,j) - 2 L+(i,j), with L+ = (L + J/n)^-1 - J/n.
class ResistanceOracle {
 public:
  explicit ResistanceOracle(const Graph& g);

  std::size_t node_count() const { return static_cast<std::size_t>(table_.rows()); }
  double operator()(NodeId i, NodeId j) const { return table_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  const Eigen::MatrixXd& table() const { return table_; }
  const Eigen::MatrixXd& pseudoinverse() const { return pinv_; }

  /// Sum over all nodes u of r(u, v).
  double total_resistance_to(NodeId v) const { return row_sums_(static_cast<Eigen::Index>(v)); }

  /// r(u, {x, y}) via the rank-2 Schur identity: with A_ab the inverse of L
  /// grounded at x, A_ab = (r(a,x) + r(b,x) - r(a,b)) / 2 and
  /// r(u, {x,y}) = A_uu - A_uy^2 / A_yy.
  double two_leader_resistance(NodeId u, NodeId x, NodeId y) const;

  /// Sum over all nodes u of r(u, {x, y}) (leaders contribute 0).
  double two_leader_total(NodeId x, NodeId y) const;

 private:
  Eigen::MatrixXd pinv_;
  Eigen::MatrixXd table_;
  Eigen::VectorXd row_sums_;
};

/// Resistance r'(p, q) after adding an edge (i, j) of weight w. If (i, j) is
/// already an edge the new edge acts as a parallel resistor (weights add).
double edge_addition_update(const ResistanceOracle& oracle, NodeId i, NodeId j, double w, NodeId p,
                            NodeId q);

/// r(u, {x, y}) on a path with x, y at the ends: d_ux - d_ux^2 / d_xy.
double path_two_point_resistance(double d_ux, double d_xy);

}  // namespace coherence_lab
