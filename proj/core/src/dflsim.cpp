// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "odfl/dflsim.hpp"

#include <cmath>
#include <numeric>

#include "odfl/convergence.hpp"
#include "odfl/errors.hpp"

namespace odfl {

namespace {

double consensus_distance(const Eigen::MatrixXd& x) {
    const Eigen::RowVectorXd mean = x.colwise().mean();
    return (x.rowwise() - mean).norm();
}

void require_contractive(const MixingMatrix& w, const char* what) {
    if (rho(w) >= 1.0 - kRhoTolerance) throw PreconditionError(std::string(what) + " requires rho(W) < 1");
}

}  // namespace

Eigen::RowVectorXd QuadraticTask::optimum() const {
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(centers.cols());
    double total = 0.0;
    for (Eigen::Index i = 0; i < centers.rows(); ++i) {
        acc += curvature[static_cast<std::size_t>(i)] * centers.row(i);
        total += curvature[static_cast<std::size_t>(i)];
    }
    return acc / total;
}

Eigen::RowVectorXd QuadraticTask::global_gradient(const Eigen::RowVectorXd& x) const {
    Eigen::RowVectorXd g = Eigen::RowVectorXd::Zero(centers.cols());
    for (Eigen::Index i = 0; i < centers.rows(); ++i)
        g += curvature[static_cast<std::size_t>(i)] * (x - centers.row(i));
    return g / static_cast<double>(centers.rows());
}

QuadraticTask make_quadratic_task(const TaskSpec& spec) {
    if (spec.agents < 1 || spec.dimension < 1) throw PreconditionError("task needs at least one agent and dimension");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    QuadraticTask task;
    task.curvature.assign(static_cast<std::size_t>(spec.agents), 1.0);
    task.centers.resize(spec.agents, spec.dimension);
    task.initial.resize(spec.agents, spec.dimension);
    for (int i = 0; i < spec.agents; ++i)
        for (int d = 0; d < spec.dimension; ++d) task.centers(i, d) = spec.center_spread * unit(rng);
    for (int i = 0; i < spec.agents; ++i)
        for (int d = 0; d < spec.dimension; ++d) task.initial(i, d) = spec.initial_spread * unit(rng);
    task.noise = spec.noise;
    return task;
}

TrainState initial_state(const QuadraticTask& task, double learning_rate, std::uint64_t seed) {
    TrainState state;
    state.params = task.initial;
    state.learning_rate = learning_rate;
    state.rng.seed(seed);
    return state;
}

TrainState dpsgd_step(const TrainState& state, const MixingMatrix& w, const QuadraticTask& task) {
    const auto m = static_cast<Eigen::Index>(task.agents());
    if (w.size() != m || state.params.rows() != m || state.params.cols() != task.dimension())
        throw PreconditionError("mixing matrix, task and state dimensions disagree");

    TrainState next = state;
    Eigen::MatrixXd grad(m, task.dimension());
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Eigen::Index i = 0; i < m; ++i) {
        grad.row(i) = task.curvature[static_cast<std::size_t>(i)] * (state.params.row(i) - task.centers.row(i));
        if (task.noise > 0.0)
            for (Eigen::Index d = 0; d < grad.cols(); ++d) grad(i, d) += task.noise * gauss(next.rng);
    }
    next.params = w.matrix() * state.params - state.learning_rate * grad;
    ++next.iteration;

    const Eigen::RowVectorXd mean = next.params.colwise().mean();
    next.consensus_distance.push_back(consensus_distance(next.params));
    next.distance_to_optimum.push_back((mean - task.optimum()).norm());
    next.gradient_norm.push_back(task.global_gradient(mean).norm());
    return next;
}

ConsensusTrace run_consensus(const MixingMatrix& w, const Eigen::MatrixXd& x0, int k_max) {
    const double r = rho(w);
    if (r >= 1.0 - kRhoTolerance) throw PreconditionError("consensus requires rho(W) < 1");
    if (x0.rows() != w.size()) throw PreconditionError("initial state has the wrong number of agents");

    ConsensusTrace trace;
    const Eigen::RowVectorXd target = x0.colwise().mean();  // J x0 is preserved by W
    Eigen::MatrixXd x = x0;
    const double d0 = (x.rowwise() - target).norm();
    trace.distance.push_back(d0);
    for (int k = 1; k <= k_max; ++k) {
        x = w.matrix() * x;
        const double d = (x.rowwise() - target).norm();
        trace.distance.push_back(d);
        if (d > std::pow(r, k) * d0 + 1e-9) trace.contraction_holds = false;
    }
    return trace;
}

DpsgdRun run_dpsgd(const QuadraticTask& task, const MixingMatrix& w, double learning_rate, int iterations,
                   std::uint64_t seed) {
    require_contractive(w, "D-PSGD");
    DpsgdRun run{initial_state(task, learning_rate, seed), 0.0, 0.0, std::nullopt};

    const Eigen::RowVectorXd mean0 = task.initial.colwise().mean();
    const double start = std::max(consensus_distance(task.initial), (mean0 - task.optimum()).norm());
    const double limit = 10.0 * std::max(start, 1e-12);

    for (int k = 0; k < iterations; ++k) {
        run.state = dpsgd_step(run.state, w, task);
        const double worst = std::max(run.state.consensus_distance.back(), run.state.distance_to_optimum.back());
        if (!run.diverged_at && (worst > limit || !std::isfinite(worst))) {
            run.diverged_at = run.state.iteration;
            break;
        }
    }
    const auto& hist = run.state.consensus_distance;
    if (!hist.empty()) {
        run.final_distance_to_optimum = run.state.distance_to_optimum.back();
        run.mean_consensus_distance = std::accumulate(hist.begin(), hist.end(), 0.0) / static_cast<double>(hist.size());
    }
    return run;
}

std::optional<int> iterations_to_consensus(const TrainState& state, double threshold) {
    for (std::size_t k = 0; k < state.consensus_distance.size(); ++k)
        if (state.consensus_distance[k] <= threshold) return static_cast<int>(k + 1);
    return std::nullopt;
}

}  // namespace odfl
