#include "coherence_lab/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "coherence_lab/electrical.hpp"
#include "coherence_lab/error.hpp"
#include "grounded.hpp"

namespace coherence_lab {

std::string_view to_string(Dynamics d) {
  switch (d) {
    case Dynamics::NoiseFree: return "noise_free";
    case Dynamics::NoiseCorrupted: return "noise_corrupted";
    case Dynamics::LeaderFree: return "leader_free";
  }
  return "unknown";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Trace: return "trace";
    case Method::Resistance: return "resistance";
    case Method::ClosedForm: return "closed_form";
    case Method::Simulation: return "simulation";
  }
  return "unknown";
}

namespace {

void validate(const Graph& g, const LeaderSet& leaders) {
  if (leaders.empty()) fail(ErrorCode::EmptyLeaderSet, "coherence needs at least one leader");
  leaders.mask(g.node_count());
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
}

// Every leader merged into a single node (the last id); parallel edges add.
std::pair<Graph, NodeId> short_leaders(const Graph& g, const LeaderSet& leaders) {
  const auto is_leader = leaders.mask(g.node_count());
  std::vector<NodeId> relabel(g.node_count());
  NodeId next = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!is_leader[v]) relabel[v] = next++;
  }
  const NodeId merged = next;
  for (NodeId v : leaders) relabel[v] = merged;

  std::map<std::pair<NodeId, NodeId>, double> weights;
  for (const Edge& e : g.edges()) {
    const NodeId a = relabel[e.u];
    const NodeId b = relabel[e.v];
    if (a == b) continue;
    weights[std::minmax(a, b)] += e.weight;
  }
  std::vector<Edge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights) edges.push_back({key.first, key.second, w});
  return {Graph::from_edges(edges, merged + 1), merged};
}

}  // namespace

CoherenceReport coherence_nf(const Graph& g, const LeaderSet& leaders, Method method) {
  validate(g, leaders);
  CoherenceReport report{.dynamics = Dynamics::NoiseFree, .method = method, .leaders = leaders};
  if (leaders.size() == g.node_count()) return report;

  switch (method) {
    case Method::Trace: {
      report.value = 0.5 * detail::GroundedSystem(g, leaders.mask(g.node_count()), {}).inverse_trace();
      break;
    }
    case Method::Resistance: {
      const auto [shorted, ground] = short_leaders(g, leaders);
      const ResistanceOracle oracle(shorted);
      report.value = 0.5 * oracle.total_resistance_to(ground);
      break;
    }
    default:
      fail(ErrorCode::NotApplicable,
           "noise-free coherence on a general graph supports trace or resistance methods");
  }
  return report;
}

CoherenceReport coherence_nc(const Graph& g, const LeaderSet& leaders, const StubbornnessMap& kappa,
                             Method method) {
  validate(g, leaders);
  CoherenceReport report{.dynamics = Dynamics::NoiseCorrupted,
                         .method = method,
                         .leaders = leaders,
                         .kappa = kappa.values_for(leaders)};
  switch (method) {
    case Method::Trace: {
      std::vector<double> shift(g.node_count(), 0.0);
      for (std::size_t i = 0; i < leaders.size(); ++i) shift[leaders[i]] = report.kappa[i];
      const std::vector<bool> none(g.node_count(), false);
      report.value = 0.5 * detail::GroundedSystem(g, none, shift).inverse_trace();
      break;
    }
    case Method::Resistance: {
      const AugmentedGraph augmented = augment_graph(g, leaders, kappa);
      const ResistanceOracle oracle(augmented.graph);
      double total = 0.0;
      for (NodeId v = 0; v < g.node_count(); ++v) total += oracle(v, augmented.sink);
      report.value = 0.5 * total;
      break;
    }
    default:
      fail(ErrorCode::NotApplicable,
           "noise-corrupted coherence on a general graph supports trace or resistance methods");
  }
  return report;
}

CoherenceReport leader_free_coherence(const Graph& g) {
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
  CoherenceReport report{.dynamics = Dynamics::LeaderFree, .method = Method::Trace};
  const std::size_t n = g.node_count();
  if (n == 1) return report;
  std::vector<bool> grounded(n, false);
  grounded[0] = true;
  const detail::GroundedSystem system(g, grounded, {});
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n - 1));
  const double quadratic = ones.dot(system.solve(ones));
  report.value = 0.5 * (system.inverse_trace() - quadratic / static_cast<double>(n));
  return report;
}

std::pair<NodeId, CoherenceReport> best_single_leader(const Graph& g, Dynamics dynamics,
                                                      const StubbornnessMap& kappa) {
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
  std::pair<NodeId, CoherenceReport> best{kNoNode, {}};
  best.second.value = std::numeric_limits<double>::infinity();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    CoherenceReport r;
    if (dynamics == Dynamics::NoiseFree) {
      r = coherence_nf(g, LeaderSet{v});
    } else if (dynamics == Dynamics::NoiseCorrupted) {
      r = coherence_nc(g, LeaderSet{v}, kappa);
    } else {
      fail(ErrorCode::NotApplicable, "leader-free dynamics has no leader to select");
    }
    // Round-off must not break exact ties in favour of a larger id.
    const double margin = 1e-9 * std::max(1.0, std::abs(r.value));
    if (best.first == kNoNode || r.value < best.second.value - margin) best = {v, std::move(r)};
  }
  return best;
}

}  // namespace coherence_lab
