#pragma once

#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include "coherence_lab/graph.hpp"

namespace coherence_lab {

/// Sorted, duplicate-free set of leader nodes.
class LeaderSet {
 public:
  LeaderSet() = default;
  LeaderSet(std::initializer_list<NodeId> members);
  explicit LeaderSet(std::vector<NodeId> members);

  std::span<const NodeId> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(NodeId v) const;
  NodeId operator[](std::size_t i) const { return members_[i]; }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Membership mask of length n; throws NodeOutOfRange if a member >= n.
  std::vector<bool> mask(std::size_t n) const;

  friend bool operator==(const LeaderSet&, const LeaderSet&) = default;
  friend auto operator<=>(const LeaderSet& a, const LeaderSet& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<NodeId> members_;
};

/// Per-node degree of stubbornness; nodes without an entry use the default.
class StubbornnessMap {
 public:
  StubbornnessMap() = default;
  explicit StubbornnessMap(double uniform);

  /// kappa[i] is assigned to leaders[i].
  static StubbornnessMap per_leader(const LeaderSet& leaders, std::span<const double> kappa);

  void set(NodeId v, double kappa);
  double at(NodeId v) const;
  double default_value() const { return default_; }
  const std::map<NodeId, double>& overrides() const { return overrides_; }

  /// The kappa of each leader in leader order.
  std::vector<double> values_for(const LeaderSet& leaders) const;

 private:
  double default_ = 1.0;
  std::map<NodeId, double> overrides_;
};

}  // namespace coherence_lab
