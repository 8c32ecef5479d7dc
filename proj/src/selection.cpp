#include "coherence_lab/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "coherence_lab/electrical.hpp"
#include "coherence_lab/error.hpp"
#include "coherence_lab/parallel.hpp"

namespace coherence_lab {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// Combination of the given lexicographic rank among k-subsets of [0, n).
std::vector<NodeId> unrank_combination(std::uint64_t rank, std::size_t n, std::size_t k) {
  std::vector<NodeId> comb;
  comb.reserve(k);
  NodeId candidate = 0;
  for (std::size_t pos = 0; pos < k; ++pos) {
    while (true) {
      const std::uint64_t with_candidate = binomial(n - candidate - 1, k - pos - 1);
      if (rank < with_candidate) break;
      rank -= with_candidate;
      ++candidate;
    }
    comb.push_back(candidate++);
  }
  return comb;
}

bool next_combination(std::vector<NodeId>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (comb[pos] < n - k + pos) {
      ++comb[pos];
      for (std::size_t j = pos + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

class Evaluator {
 public:
  Evaluator(const Graph& g, std::size_t k, Dynamics dynamics, const StubbornnessMap& kappa)
      : g_(g), dynamics_(dynamics), kappa_(kappa) {
    if (dynamics == Dynamics::NoiseFree && k <= 2) oracle_ = std::make_unique<ResistanceOracle>(g);
  }

  bool uses_resistance_table() const { return oracle_ != nullptr; }

  double operator()(std::span<const NodeId> set) const {
    if (oracle_) {
      if (set.size() == 1) return 0.5 * oracle_->total_resistance_to(set[0]);
      if (set.size() == 2) return 0.5 * oracle_->two_leader_total(set[0], set[1]);
    }
    const LeaderSet leaders(std::vector<NodeId>(set.begin(), set.end()));
    if (dynamics_ == Dynamics::NoiseFree) return coherence_nf(g_, leaders).value;
    return coherence_nc(g_, leaders, kappa_).value;
  }

 private:
  const Graph& g_;
  Dynamics dynamics_;
  const StubbornnessMap& kappa_;
  std::unique_ptr<ResistanceOracle> oracle_;
};

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

SelectionResult brute_force_select(const Graph& g, std::size_t k, Dynamics dynamics,
                                   const StubbornnessMap& kappa, const SelectionOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = g.node_count();
  if (dynamics == Dynamics::LeaderFree) fail(ErrorCode::NotApplicable, "leader-free dynamics has no leaders");
  if (k < 1 || k > n) {
    fail(ErrorCode::BadParameter, "need 1 <= k <= n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
  }
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
  const std::uint64_t total = binomial(n, k);
  if (total > options.budget) {
    fail(ErrorCode::BudgetExceeded, "C(" + std::to_string(n) + ", " + std::to_string(k) + ") = " +
                                        (total == kSaturated ? std::string("overflow") : std::to_string(total)) +
                                        " exceeds budget " + std::to_string(options.budget));
  }

  const Evaluator evaluate(g, k, dynamics, kappa);
  std::vector<double> values(total);
  parallel_chunks(
      total,
      [&](std::size_t begin, std::size_t end) {
        auto comb = unrank_combination(begin, n, k);
        for (std::size_t idx = begin; idx < end; ++idx) {
          values[idx] = evaluate(comb);
          next_combination(comb, n);
        }
      },
      options.threads);

  SelectionResult result;
  result.dynamics = dynamics;
  result.evaluated_count = total;
  result.value = *std::min_element(values.begin(), values.end());
  const double threshold = result.value + options.tie_tolerance * std::max(1.0, std::abs(result.value));
  std::vector<NodeId> comb(k);
  for (std::size_t j = 0; j < k; ++j) comb[j] = j;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (values[idx] <= threshold) {
      ++result.optimal_count;
      if (result.optimal_sets.size() < options.max_reported) result.optimal_sets.emplace_back(comb);
    }
    next_combination(comb, n);
  }
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

std::vector<CandidateOutcome> evaluate_candidates(const Graph& g, const std::vector<LeaderSet>& candidates,
                                                  Dynamics dynamics, const StubbornnessMap& kappa) {
  std::vector<CandidateOutcome> out(candidates.size());
  std::unique_ptr<ResistanceOracle> oracle;
  const bool wants_table =
      dynamics == Dynamics::NoiseFree &&
      std::any_of(candidates.begin(), candidates.end(), [](const LeaderSet& s) { return s.size() == 2; });
  if (wants_table && is_connected(g)) oracle = std::make_unique<ResistanceOracle>(g);

  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const LeaderSet& s = candidates[c];
    try {
      if (dynamics == Dynamics::NoiseFree) {
        if (oracle && s.size() == 2 && s[1] < g.node_count()) {
          out[c].report = CoherenceReport{.value = 0.5 * oracle->two_leader_total(s[0], s[1]),
                                          .dynamics = Dynamics::NoiseFree,
                                          .method = Method::Resistance,
                                          .leaders = s};
        } else {
          out[c].report = coherence_nf(g, s);
        }
      } else if (dynamics == Dynamics::NoiseCorrupted) {
        out[c].report = coherence_nc(g, s, kappa);
      } else {
        fail(ErrorCode::NotApplicable, "leader-free dynamics has no leaders");
      }
    } catch (const Error& e) {
      out[c].error = e.what();
    }
  }
  return out;
}

}  // namespace coherence_lab
