#include "coherence_lab/dynamics_sim.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "coherence_lab/error.hpp"
#include "coherence_lab/parallel.hpp"

namespace coherence_lab {

namespace {

// Symmetric system matrix in row-list form, restricted to the simulated nodes.
struct System {
  std::vector<double> diagonal;
  std::vector<std::vector<Neighbor>> off;  // positive weights; entry is -weight
};

Eigen::MatrixXd dense(const System& s) {
  const auto m = static_cast<Eigen::Index>(s.diagonal.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a(i, i) = s.diagonal[i];
    for (const Neighbor& nb : s.off[i]) a(i, static_cast<Eigen::Index>(nb.node)) = -nb.weight;
  }
  return a;
}

void validate(const SimConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) fail(ErrorCode::BadParameter, "dt must be positive");
  if (!(cfg.horizon > cfg.dt) || !std::isfinite(cfg.horizon)) {
    fail(ErrorCode::BadParameter, "horizon must exceed dt");
  }
  if (!(cfg.burn_in >= 0.0 && cfg.burn_in < 1.0)) fail(ErrorCode::BadParameter, "burn_in must lie in [0, 1)");
  if (cfg.trials < 1) fail(ErrorCode::BadParameter, "need at least one trial");
}

void check_stability(const System& s, double dt) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense(s), Eigen::EigenvaluesOnly);
  const double lambda_max = eig.eigenvalues().maxCoeff();
  if (dt * lambda_max >= 2.0) {
    fail(ErrorCode::UnstableStep, "dt=" + std::to_string(dt) + " needs to be below 2/lambda_max=" +
                                      std::to_string(2.0 / lambda_max));
  }
}

double run_trial(const System& s, const SimConfig& cfg, std::size_t trial) {
  const std::size_t m = s.diagonal.size();
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;

  const auto steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  const auto skip = static_cast<std::size_t>(std::floor(cfg.burn_in * static_cast<double>(steps)));
  const double noise = std::sqrt(cfg.dt);

  std::vector<double> x(m, 0.0), next(m);
  double accumulated = 0.0;
  for (std::size_t step = 0; step < steps; ++step) {
    for (std::size_t i = 0; i < m; ++i) {
      double drift = s.diagonal[i] * x[i];
      for (const Neighbor& nb : s.off[i]) drift -= nb.weight * x[nb.node];
      next[i] = x[i] - cfg.dt * drift + noise * normal(rng);
    }
    x.swap(next);
    if (step >= skip) {
      double total = 0.0;
      for (double v : x) total += v * v;
      accumulated += total;
    }
  }
  return accumulated / static_cast<double>(steps - skip);
}

SimEstimate simulate(const System& s, const SimConfig& cfg) {
  validate(cfg);
  if (s.diagonal.empty()) return {};
  check_stability(s, cfg.dt);

  std::vector<double> per_trial(cfg.trials);
  parallel_chunks(cfg.trials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) per_trial[t] = run_trial(s, cfg, t);
  });

  // Fixed-order reduction keeps results independent of the thread count.
  SimEstimate est;
  for (double v : per_trial) est.mean += v;
  est.mean /= static_cast<double>(cfg.trials);
  if (cfg.trials > 1) {
    double ss = 0.0;
    for (double v : per_trial) ss += (v - est.mean) * (v - est.mean);
    est.std_error = std::sqrt(ss / static_cast<double>(cfg.trials - 1) / static_cast<double>(cfg.trials));
  }
  return est;
}

void require_connected_with_leaders(const Graph& g, const LeaderSet& leaders) {
  if (leaders.empty()) fail(ErrorCode::EmptyLeaderSet, "leader set is empty");
  (void)leaders.mask(g.node_count());
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
}

}  // namespace

SimEstimate simulate_nf(const Graph& g, const LeaderSet& leaders, const SimConfig& cfg) {
  require_connected_with_leaders(g, leaders);
  const std::vector<bool> is_leader = leaders.mask(g.node_count());
  std::vector<NodeId> index(g.node_count(), kNoNode);
  System s;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!is_leader[v]) index[v] = s.diagonal.size(), s.diagonal.push_back(g.weighted_degree(v));
  }
  s.off.resize(s.diagonal.size());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (is_leader[v]) continue;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!is_leader[nb.node]) s.off[index[v]].push_back({index[nb.node], nb.weight});
    }
  }
  return simulate(s, cfg);
}

SimEstimate simulate_nc(const Graph& g, const LeaderSet& leaders, const StubbornnessMap& kappa,
                        const SimConfig& cfg) {
  require_connected_with_leaders(g, leaders);
  System s;
  s.diagonal.resize(g.node_count());
  s.off.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    s.diagonal[v] = g.weighted_degree(v) + (leaders.contains(v) ? kappa.at(v) : 0.0);
    s.off[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
  }
  return simulate(s, cfg);
}

double euler_stationary_coherence(const Eigen::MatrixXd& a, double dt) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  double total = 0.0;
  for (double lambda : eig.eigenvalues()) {
    if (!(lambda > 0.0) || dt * lambda >= 2.0) fail(ErrorCode::UnstableStep, "recursion has no stationary law");
    total += 1.0 / (lambda * (2.0 - dt * lambda));
  }
  return total;
}

}  // namespace coherence_lab
