// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "odfl/mixing.hpp"

namespace odfl {

/// F_i(x) = (a_i / 2) ||x - c_i||^2 with additive Gaussian gradient noise.
/// Row i of `centers` and `initial` belongs to agent i.
struct QuadraticTask {
    std::vector<double> curvature;  ///< a_i > 0
    Eigen::MatrixXd centers;        ///< m x d
    Eigen::MatrixXd initial;        ///< m x d starting parameters
    double noise = 0.0;             ///< standard deviation per coordinate

    int agents() const { return static_cast<int>(centers.rows()); }
    int dimension() const { return static_cast<int>(centers.cols()); }

    /// x* = sum a_i c_i / sum a_i.
    Eigen::RowVectorXd optimum() const;
    /// Gradient of the global objective (1/m) sum F_i at x.
    Eigen::RowVectorXd global_gradient(const Eigen::RowVectorXd& x) const;
};

struct TaskSpec {
    int agents = 2;
    int dimension = 2;
    double center_spread = 1.0;   ///< centers uniform in [-spread, spread]; 0 gives identical centers at the origin
    double initial_spread = 1.0;  ///< initial parameters uniform in [-spread, spread]
    double noise = 0.0;
    std::uint64_t seed = 0;
};

/// Unit-curvature task drawn from `spec.seed`.
QuadraticTask make_quadratic_task(const TaskSpec& spec);

struct TrainState {
    Eigen::MatrixXd params;  ///< m x d
    int iteration = 0;
    double learning_rate = 0.0;
    std::mt19937_64 rng;
    std::vector<double> consensus_distance;     ///< ||X - J X||_F after each step
    std::vector<double> distance_to_optimum;    ///< ||x-bar - x*|| after each step
    std::vector<double> gradient_norm;          ///< ||grad F(x-bar)|| after each step
};

TrainState initial_state(const QuadraticTask& task, double learning_rate, std::uint64_t seed);

/// x_i <- sum_j W_ij x_j - eta g_i(x_i), all agents from the previous iterate.
TrainState dpsgd_step(const TrainState& state, const MixingMatrix& w, const QuadraticTask& task);

struct ConsensusTrace {
    std::vector<double> distance;  ///< ||W^k x0 - J x0||, k = 0..k_max
    bool contraction_holds = true; ///< distance_k <= rho^k distance_0 + 1e-9 for every k
};

/// Pure gossip x <- W x. Throws PreconditionError when rho(W) >= 1.
ConsensusTrace run_consensus(const MixingMatrix& w, const Eigen::MatrixXd& x0, int k_max);

struct DpsgdRun {
    TrainState state;
    double final_distance_to_optimum = 0.0;
    double mean_consensus_distance = 0.0;
    /// First iteration whose distance exceeded 10x the initial one.
    std::optional<int> diverged_at;
};

/// K steps of D-PSGD. Throws PreconditionError when rho(W) >= 1.
DpsgdRun run_dpsgd(const QuadraticTask& task, const MixingMatrix& w, double learning_rate, int iterations,
                   std::uint64_t seed);

/// First 1-based iteration whose consensus distance is at most `threshold`.
std::optional<int> iterations_to_consensus(const TrainState& state, double threshold);

}  // namespace odfl
