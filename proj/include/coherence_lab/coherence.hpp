#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coherence_lab/graph.hpp"
#include "coherence_lab/leaders.hpp"

namespace coherence_lab {

enum class Dynamics { NoiseFree, NoiseCorrupted, LeaderFree };

enum class Method { Trace, Resistance, ClosedForm, Simulation };

std::string_view to_string(Dynamics d);
std::string_view to_string(Method m);

/// A coherence value and how it was obtained. The reference signal is 0.
struct CoherenceReport {
  double value = 0.0;
  Dynamics dynamics = Dynamics::NoiseFree;
  Method method = Method::Trace;
  std::string graph_id;
  LeaderSet leaders;
  std::vector<double> kappa;  // per leader; empty for noise-free dynamics
};

/// R_NF(S) = 1/2 tr(L_ff^-1) (Trace) or 1/2 sum_{i not in S} r(i, S)
/// (Resistance, computed on the graph with S shorted into one node).
CoherenceReport coherence_nf(const Graph& g, const LeaderSet& leaders, Method method = Method::Trace);

/// R_NC(S) = 1/2 tr((L + D_kappa D_S)^-1) (Trace) or 1/2 sum_{i in V}
/// r(i, sink) on the augmented graph (Resistance).
CoherenceReport coherence_nc(const Graph& g, const LeaderSet& leaders, const StubbornnessMap& kappa,
                             Method method = Method::Trace);

/// V = 1/2 tr(L+), computed through one grounded factorization:
/// tr(L+) = tr(L_v^-1) - (1/n) 1' L_v^-1 1.
CoherenceReport leader_free_coherence(const Graph& g);

/// Best single leader under NF or NC dynamics; ties go to the smallest id.
std::pair<NodeId, CoherenceReport> best_single_leader(const Graph& g, Dynamics dynamics,
                                                      const StubbornnessMap& kappa = StubbornnessMap{});

}  // namespace coherence_lab
