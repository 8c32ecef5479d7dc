#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "coherence_lab/graph.hpp"

namespace coherence_lab::detail {

/// The principal submatrix of L + diag(shift) on the non-grounded nodes,
/// factorized once. Throws Disconnected when it is not positive definite.
class GroundedSystem {
 public:
  /// shift may be empty (no diagonal term) or have one entry per node.
  GroundedSystem(const Graph& g, const std::vector<bool>& grounded, std::span<const double> shift);
  ~GroundedSystem();
  GroundedSystem(GroundedSystem&&) noexcept;
  GroundedSystem& operator=(GroundedSystem&&) noexcept;

  std::size_t size() const { return kept_.size(); }

  /// Diagonal of the inverse, indexed like kept_nodes().
  Eigen::VectorXd inverse_diagonal() const;
  double inverse_trace() const { return inverse_diagonal().sum(); }

  /// (inverse)(v, v) for a kept node v.
  double inverse_entry(NodeId v) const;

  /// Solves the grounded system; rhs is indexed like kept_nodes().
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  std::span<const NodeId> kept_nodes() const { return kept_; }

 private:
  struct Impl;
  std::vector<NodeId> kept_;
  std::vector<Eigen::Index> position_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace coherence_lab::detail
