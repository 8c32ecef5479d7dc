#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "coherence_lab/graph.hpp"
#include "coherence_lab/leaders.hpp"

namespace coherence_lab {

struct SimConfig {
  double dt = 1e-3;
  double horizon = 200.0;
  double burn_in = 0.25;  // fraction of the horizon discarded before averaging
  std::size_t trials = 20;
  std::uint64_t seed = 0;
};

struct SimEstimate {
  double mean = 0.0;       // time-averaged total variance, averaged over trials
  double std_error = 0.0;  // standard error across trials
};

/// Euler-Maruyama run of the follower dynamics dx_f = -L_ff x_f dt + dW with
/// leaders pinned at 0. Estimates the total steady-state follower variance.
/// Throws UnstableStep when dt >= 2 / lambda_max(L_ff).
SimEstimate simulate_nf(const Graph& g, const LeaderSet& leaders, const SimConfig& cfg);

/// Same for all nodes under dx = -(L + D_kappa D_S) x dt + dW.
SimEstimate simulate_nc(const Graph& g, const LeaderSet& leaders, const StubbornnessMap& kappa,
                        const SimConfig& cfg);

/// Exact stationary total variance of the Euler-Maruyama recursion for the
/// symmetric system matrix a: sum over eigenvalues of 1 / (lambda (2 - dt lambda)).
/// Tends to the continuous value 1/2 tr(a^-1) as dt -> 0.
double euler_stationary_coherence(const Eigen::MatrixXd& a, double dt);

}  // namespace coherence_lab
