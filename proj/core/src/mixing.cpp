// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "odfl/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "odfl/errors.hpp"

namespace odfl {

namespace {

struct TopEigen {
    double value;
    Eigen::VectorXd vector;
};

// Largest-magnitude eigenpair of a symmetric matrix. Eigen returns eigenvalues
// in ascending order; magnitudes within 1e-12 count as tied and the earliest
// index wins.
TopEigen top_eigenpair(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    const auto& values = solver.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < values.size(); ++k)
        if (std::abs(values[k]) > std::abs(values[best]) + 1e-12) best = k;
    return {values[best], solver.eigenvectors().col(best)};
}

}  // namespace

MixingMatrix MixingMatrix::from_weights(std::span<const double> alpha, int agents) {
    if (agents < 1) throw InputError("mixing matrix needs at least one agent");
    if (alpha.size() != pair_count(agents))
        throw InputError("expected " + std::to_string(pair_count(agents)) + " link weights, got " +
                         std::to_string(alpha.size()));
    const Eigen::MatrixXd b = incidence_matrix(agents);
    const Eigen::Map<const Eigen::VectorXd> a(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(agents, agents) - b * a.asDiagonal() * b.transpose();
    return MixingMatrix(agents, {alpha.begin(), alpha.end()}, std::move(w));
}

MixingMatrix MixingMatrix::from_link_weights(const Activation& links, std::span<const double> weights, int agents) {
    if (links.size() != weights.size()) throw InputError("one weight per link is required");
    std::vector<double> alpha(pair_count(agents), 0.0);
    for (std::size_t k = 0; k < links.size(); ++k) {
        const auto link = normalize_activation({links[k]}, agents).front();
        alpha[pair_index(link, agents)] = weights[k];
    }
    return from_weights(alpha, agents);
}

MixingMatrix MixingMatrix::identity(int agents) {
    return from_weights(std::vector<double>(pair_count(agents), 0.0), agents);
}

Activation MixingMatrix::activation(double tolerance) const {
    Activation out;
    for (std::size_t e = 0; e < alpha_.size(); ++e)
        if (std::abs(alpha_[e]) > tolerance) out.push_back(pair_at(e, m_));
    return out;
}

Eigen::MatrixXd incidence_matrix(int agents) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(agents, static_cast<Eigen::Index>(pair_count(agents)));
    Eigen::Index col = 0;
    for (const auto& [i, j] : complete_overlay(agents)) {
        b(i, col) = 1.0;
        b(j, col) = -1.0;
        ++col;
    }
    return b;
}

Eigen::MatrixXd averaging_matrix(int agents) {
    return Eigen::MatrixXd::Constant(agents, agents, 1.0 / agents);
}

double rho(const Eigen::MatrixXd& w) {
    const Eigen::MatrixXd d = w - averaging_matrix(static_cast<int>(w.rows()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(d, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double rho(const MixingMatrix& w) { return rho(w.matrix()); }

Eigen::MatrixXd swap_atom(int agents, OverlayLink link) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(agents, agents);
    s(link.i, link.i) = 0.0;
    s(link.j, link.j) = 0.0;
    s(link.i, link.j) = 1.0;
    s(link.j, link.i) = 1.0;
    return s;
}

Eigen::MatrixXd AtomDecomposition::reconstruct(int agents) const {
    Eigen::MatrixXd w = identity * Eigen::MatrixXd::Identity(agents, agents);
    for (std::size_t e = 0; e < swaps.size(); ++e)
        if (swaps[e] != 0.0) w += swaps[e] * swap_atom(agents, pair_at(e, agents));
    return w;
}

AtomDecomposition decompose_to_atoms(const MixingMatrix& w) {
    AtomDecomposition out;
    out.swaps = w.weights();
    double total = 0.0;
    for (double a : out.swaps) total += a;
    out.identity = 1.0 - total;
    return out;
}

// ---------------------------------------------------------------------------

std::vector<double> metropolis_weights(const Activation& activated, int agents) {
    const auto links = normalize_activation(activated, agents);
    std::vector<int> degree(static_cast<std::size_t>(agents), 0);
    for (const auto& l : links) {
        ++degree[static_cast<std::size_t>(l.i)];
        ++degree[static_cast<std::size_t>(l.j)];
    }
    std::vector<double> alpha(pair_count(agents), 0.0);
    for (const auto& l : links)
        alpha[pair_index(l, agents)] =
            1.0 / (1.0 + std::max(degree[static_cast<std::size_t>(l.i)], degree[static_cast<std::size_t>(l.j)]));
    return alpha;
}

namespace {

WeightDesign descend(const Activation& links, int agents, std::vector<double> alpha, const WeightOptions& options) {
    const auto value = [&](const std::vector<double>& a) { return rho(MixingMatrix::from_weights(a, agents)); };
    WeightDesign best{alpha, value(alpha), 0};
    if (links.empty()) return best;

    std::vector<std::size_t> free;
    for (const auto& l : links) free.push_back(pair_index(l, agents));

    const Eigen::MatrixXd j = averaging_matrix(agents);
    std::vector<double> history{best.rho};  // best value after each step
    for (int t = 1; t <= options.max_iterations; ++t) {
        const auto w = MixingMatrix::from_weights(alpha, agents);
        const auto top = top_eigenpair(w.matrix() - j);
        const double sign = top.value >= 0.0 ? 1.0 : -1.0;

        // d|lambda| / d alpha_ij = -sign * (v_i - v_j)^2
        const double step = options.step / std::sqrt(static_cast<double>(t));
        bool moved = false;
        for (auto e : free) {
            const auto [i, k] = pair_at(e, agents);
            const double diff = top.vector[i] - top.vector[k];
            const double grad = -sign * diff * diff;
            if (grad != 0.0) moved = true;
            alpha[e] -= step * grad;
        }
        best.iterations = t;
        if (!moved) break;

        const double current = value(alpha);
        if (current < best.rho) {
            best.rho = current;
            best.alpha = alpha;
        }
        history.push_back(best.rho);
        if (t >= options.patience &&
            history[static_cast<std::size_t>(t - options.patience)] - best.rho < options.tolerance)
            break;
    }
    return best;
}

}  // namespace

WeightDesign optimize_weights(const Activation& activated, int agents, const WeightOptions& options) {
    const auto links = normalize_activation(activated, agents);
    return descend(links, agents, metropolis_weights(links, agents), options);
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kTieTolerance = 1e-12;

// tau_bar bookkeeping: |E_a ∩ F| per category for the current support.
struct SupportLoad {
    const CategoryTable& cats;
    double kappa;
    std::vector<int> shared;
    double tau = 0.0;

    void add(OverlayLink link) {
        for (auto k : cats.categories_of(link)) {
            ++shared[k];
            tau = std::max(tau, kappa * shared[k] / cats[k].capacity);
        }
    }
    double with(OverlayLink link) const {
        double t = tau;
        for (auto k : cats.categories_of(link)) t = std::max(t, kappa * (shared[k] + 1) / cats[k].capacity);
        return t;
    }
};

}  // namespace

FmmdResult fmmd(const CategoryTable& cats, const FmmdOptions& options) {
    if (options.iterations < 1) throw PreconditionError("FMMD needs at least one iteration");
    const int m = cats.agent_count();
    const auto links = complete_overlay(m);
    const Eigen::MatrixXd j = averaging_matrix(m);

    std::vector<double> alpha(links.size(), 0.0);  // swap coefficients; identity gets 1 - sum
    std::vector<bool> selected(links.size(), false);
    SupportLoad support{cats, options.kappa, std::vector<int>(cats.size(), 0)};

    FmmdResult result{MixingMatrix::identity(m), {}, 0, false};
    for (int k = 0; k < options.iterations; ++k) {
        const auto w = MixingMatrix::from_weights(alpha, m);
        const auto top = top_eigenpair(w.matrix() - j);
        const double sign = top.value >= 0.0 ? 1.0 : -1.0;

        // <S, s v v^T> for the identity and every swap atom
        const double identity_score = sign;
        std::vector<double> swap_score(links.size());
        for (std::size_t e = 0; e < links.size(); ++e) {
            const double diff = top.vector[links[e].i] - top.vector[links[e].j];
            swap_score[e] = sign * (1.0 - diff * diff);
        }

        std::optional<std::size_t> choice;  // nullopt = identity
        if (!options.priority) {
            double best = identity_score;
            for (double s : swap_score) best = std::min(best, s);
            if (identity_score > best + kTieTolerance) {
                for (std::size_t e = 0; e < links.size(); ++e)
                    if (swap_score[e] <= best + kTieTolerance) {
                        choice = e;
                        break;
                    }
            }
        } else {
            // The identity builds W^(0) and never re-enters the candidate set.
            double best_tau = std::numeric_limits<double>::infinity();
            std::vector<double> tau(links.size(), std::numeric_limits<double>::infinity());
            for (std::size_t e = 0; e < links.size(); ++e) {
                if (selected[e]) continue;
                tau[e] = support.with(links[e]);
                best_tau = std::min(best_tau, tau[e]);
            }
            if (best_tau == std::numeric_limits<double>::infinity()) {
                result.exhausted = true;
                break;
            }
            double best_score = std::numeric_limits<double>::infinity();
            for (std::size_t e = 0; e < links.size(); ++e)
                if (!selected[e] && tau[e] <= best_tau * (1 + kTieTolerance))
                    best_score = std::min(best_score, swap_score[e]);
            for (std::size_t e = 0; e < links.size(); ++e)
                if (!selected[e] && tau[e] <= best_tau * (1 + kTieTolerance) &&
                    swap_score[e] <= best_score + kTieTolerance) {
                    choice = e;
                    break;
                }
        }

        // W^(k+1) = k/(k+2) W^(k) + 2/(k+2) S^(k+1)
        const double keep = static_cast<double>(k) / (k + 2);
        const double gain = 2.0 / (k + 2);
        for (auto& a : alpha) a *= keep;
        if (choice) {
            alpha[*choice] += gain;
            if (!selected[*choice]) {
                selected[*choice] = true;
                support.add(links[*choice]);
            }
            result.atoms.emplace_back(links[*choice]);
        } else {
            result.atoms.emplace_back(std::nullopt);
        }
        result.iterations_run = k + 1;
    }

    if (options.weight_opt) {
        auto fw = MixingMatrix::from_weights(alpha, m);
        const auto support_links = fw.activation(1e-9);
        auto start = metropolis_weights(support_links, m);
        // warm start from the Frank-Wolfe weights when they are already better
        if (rho(fw) < rho(MixingMatrix::from_weights(start, m))) {
            start.assign(pair_count(m), 0.0);
            for (const auto& l : support_links) start[pair_index(l, m)] = fw.weight(l);
        }
        alpha = descend(support_links, m, std::move(start), {}).alpha;
    }
    result.design = MixingMatrix::from_weights(alpha, m);
    return result;
}

// ---------------------------------------------------------------------------

std::optional<BenchmarkTopology> parse_benchmark_topology(std::string_view name) {
    if (name == "ring") return BenchmarkTopology::Ring;
    if (name == "prim") return BenchmarkTopology::Prim;
    if (name == "clique") return BenchmarkTopology::Clique;
    return std::nullopt;
}

Activation benchmark_topology(BenchmarkTopology kind, const CategoryTable& cats, double kappa, int agents) {
    if (agents < 2) throw PreconditionError("benchmark topologies need at least two agents");
    switch (kind) {
        case BenchmarkTopology::Clique:
            return complete_overlay(agents);
        case BenchmarkTopology::Ring: {
            Activation ring;
            for (int i = 0; i + 1 < agents; ++i) ring.push_back({i, i + 1});
            if (agents > 2) ring.push_back({0, agents - 1});
            return normalize_activation(ring, agents);
        }
        case BenchmarkTopology::Prim: {
            if (cats.agent_count() != agents) throw PreconditionError("category table has a different agent count");
            std::vector<bool> in_tree(static_cast<std::size_t>(agents), false);
            in_tree[0] = true;
            Activation tree;
            for (int added = 1; added < agents; ++added) {
                std::optional<OverlayLink> best;
                double best_w = std::numeric_limits<double>::infinity();
                for (const auto& link : complete_overlay(agents)) {
                    if (in_tree[static_cast<std::size_t>(link.i)] == in_tree[static_cast<std::size_t>(link.j)])
                        continue;
                    const double w = kappa / cats.bottleneck(link);
                    if (!best || w < best_w) {  // complete_overlay is lexicographic, so ties keep the first
                        best = link;
                        best_w = w;
                    }
                }
                in_tree[static_cast<std::size_t>(best->i)] = true;
                in_tree[static_cast<std::size_t>(best->j)] = true;
                tree.push_back(*best);
            }
            return normalize_activation(tree, agents);
        }
    }
    return {};
}

}  // namespace odfl
