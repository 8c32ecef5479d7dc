#include "coherence_lab/leaders.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coherence_lab/error.hpp"

namespace coherence_lab {

namespace {

void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    fail(ErrorCode::BadKappa, "stubbornness must be positive and finite, got " + std::to_string(kappa));
  }
}

}  // namespace

LeaderSet::LeaderSet(std::initializer_list<NodeId> members)
    : LeaderSet(std::vector<NodeId>(members)) {}

LeaderSet::LeaderSet(std::vector<NodeId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool LeaderSet::contains(NodeId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<bool> LeaderSet::mask(std::size_t n) const {
  std::vector<bool> m(n, false);
  for (NodeId v : members_) {
    if (v >= n) {
      fail(ErrorCode::NodeOutOfRange,
           "leader " + std::to_string(v) + " outside graph of " + std::to_string(n) + " nodes");
    }
    m[v] = true;
  }
  return m;
}

StubbornnessMap::StubbornnessMap(double uniform) : default_(uniform) { check_kappa(uniform); }

StubbornnessMap StubbornnessMap::per_leader(const LeaderSet& leaders, std::span<const double> kappa) {
  if (kappa.size() != leaders.size()) {
    fail(ErrorCode::BadKappa, "got " + std::to_string(kappa.size()) + " stubbornness values for " +
                                  std::to_string(leaders.size()) + " leaders");
  }
  StubbornnessMap map;
  for (std::size_t i = 0; i < kappa.size(); ++i) map.set(leaders[i], kappa[i]);
  return map;
}

void StubbornnessMap::set(NodeId v, double kappa) {
  check_kappa(kappa);
  overrides_[v] = kappa;
}

double StubbornnessMap::at(NodeId v) const {
  const auto it = overrides_.find(v);
  return it == overrides_.end() ? default_ : it->second;
}

std::vector<double> StubbornnessMap::values_for(const LeaderSet& leaders) const {
  std::vector<double> out;
  out.reserve(leaders.size());
  for (NodeId v : leaders) out.push_back(at(v));
  return out;
}

}  // namespace coherence_lab
