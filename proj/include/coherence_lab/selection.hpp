#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coherence_lab/coherence.hpp"
#include "coherence_lab/graph.hpp"
#include "coherence_lab/leaders.hpp"

namespace coherence_lab {

struct SelectionOptions {
  std::uint64_t budget = 10'000'000;  // maximum number of candidate sets
  std::size_t max_reported = 1000;    // co-optimal sets kept in the result
  /// Sets within tie_tolerance * max(1, |best|) of the best value are co-optimal.
  double tie_tolerance = 1e-9;
  unsigned threads = 0;  // 0: COHERENCE_LAB_THREADS or hardware concurrency
};

struct SelectionResult {
  std::vector<LeaderSet> optimal_sets;  // lexicographic order, at most max_reported
  std::size_t optimal_count = 0;        // total number of co-optimal sets
  double value = 0.0;
  Dynamics dynamics = Dynamics::NoiseFree;
  std::uint64_t evaluated_count = 0;
  std::chrono::duration<double> elapsed{};
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Exhaustive search over all leader sets of size exactly k. k = 1 and k = 2
/// under noise-free dynamics use the resistance table; everything else runs one
/// grounded factorization per candidate. Throws BudgetExceeded.
SelectionResult brute_force_select(const Graph& g, std::size_t k, Dynamics dynamics,
                                   const StubbornnessMap& kappa = StubbornnessMap{},
                                   const SelectionOptions& options = {});

struct CandidateOutcome {
  std::optional<CoherenceReport> report;
  std::string error;  // set when report is empty
};

/// Evaluates each candidate independently; a failing candidate yields an
/// error entry instead of aborting the batch. Output follows input order.
std::vector<CandidateOutcome> evaluate_candidates(const Graph& g, const std::vector<LeaderSet>& candidates,
                                                  Dynamics dynamics,
                                                  const StubbornnessMap& kappa = StubbornnessMap{});

}  // namespace coherence_lab
