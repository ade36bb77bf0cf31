// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "odfl/netmodel.hpp"
#include "odfl/overlay.hpp"

namespace odfl {

/// Symmetric mixing matrix with unit row sums, parameterized by one weight per
/// overlay link: W = I - B diag(alpha) B^T, so that W_ij = alpha_ij off the
/// diagonal. Weights may be negative or exceed one.
class MixingMatrix {
public:
    /// `alpha` is indexed over the complete overlay in lexicographic link order.
    static MixingMatrix from_weights(std::span<const double> alpha, int agents);
    /// Weights given only on `links`; all other links get weight zero.
    static MixingMatrix from_link_weights(const Activation& links, std::span<const double> weights, int agents);

    static MixingMatrix identity(int agents);

    int size() const { return m_; }
    const std::vector<double>& weights() const { return alpha_; }
    double weight(OverlayLink link) const { return alpha_[pair_index(link, m_)]; }
    const Eigen::MatrixXd& matrix() const { return w_; }

    /// Links whose |weight| exceeds `tolerance`.
    Activation activation(double tolerance = 1e-9) const;

private:
    MixingMatrix(int agents, std::vector<double> alpha, Eigen::MatrixXd w)
        : m_(agents), alpha_(std::move(alpha)), w_(std::move(w)) {}

    int m_;
    std::vector<double> alpha_;
    Eigen::MatrixXd w_;
};

/// Oriented incidence matrix of the complete overlay: column e = (i,j) has +1
/// in row i and -1 in row j.
Eigen::MatrixXd incidence_matrix(int agents);

/// J = (1/m) 1 1^T.
Eigen::MatrixXd averaging_matrix(int agents);

/// rho = ||W - J||, the largest eigenvalue magnitude of the symmetric W - J.
double rho(const MixingMatrix& w);
double rho(const Eigen::MatrixXd& w);

/// S^(i,j): the identity with rows i and j exchanged.
Eigen::MatrixXd swap_atom(int agents, OverlayLink link);

/// W = identity * I + sum_e swaps[e] * S^(e).
struct AtomDecomposition {
    double identity = 1.0;
    std::vector<double> swaps;  ///< lexicographic link order

    Eigen::MatrixXd reconstruct(int agents) const;
};

AtomDecomposition decompose_to_atoms(const MixingMatrix& w);

struct WeightOptions {
    double step = 0.5;             ///< step size c / sqrt(t)
    int max_iterations = 5000;
    int patience = 200;            ///< stop when the best value moved less than `tolerance` over this many steps
    double tolerance = 1e-7;
};

struct WeightDesign {
    std::vector<double> alpha;  ///< complete-overlay weights, zero off the activation
    double rho = 1.0;
    int iterations = 0;

    MixingMatrix matrix(int agents) const { return MixingMatrix::from_weights(alpha, agents); }
};

/// alpha^0_ij = 1 / (1 + max(deg_i, deg_j)) on the activation's subgraph.
std::vector<double> metropolis_weights(const Activation& activated, int agents);

/// Minimizes ||I - B diag(alpha) B^T - J|| over weights supported on `activated`
/// by projected subgradient descent from the Metropolis weights, keeping the
/// best iterate. Empty or disconnected activations end at rho = 1.
WeightDesign optimize_weights(const Activation& activated, int agents, const WeightOptions& options = {});

struct FmmdOptions {
    int iterations = 12;        ///< T >= 1
    bool weight_opt = false;    ///< re-optimize the weights on the final support
    bool priority = false;      ///< restrict each step to the tau_bar-minimal unselected atoms
    double kappa = 1.0;
};

struct FmmdResult {
    MixingMatrix design;
    /// Selected atom per iteration; nullopt stands for the identity atom.
    std::vector<std::optional<OverlayLink>> atoms;
    int iterations_run = 0;
    /// Priority mode ran out of unselected atoms before T iterations.
    bool exhausted = false;
};

/// Frank-Wolfe mixing matrix design over conv({I} U {S^(i,j)}).
FmmdResult fmmd(const CategoryTable& cats, const FmmdOptions& options);

enum class BenchmarkTopology { Ring, Prim, Clique };

std::optional<BenchmarkTopology> parse_benchmark_topology(std::string_view name);

/// Ring: cycle in agent order. Clique: all links. Prim: minimum spanning tree of
/// the complete overlay with edge weight kappa / bottleneck(p_ij), grown from
/// agent 0 with ties broken by the lexicographically smaller link.
Activation benchmark_topology(BenchmarkTopology kind, const CategoryTable& cats, double kappa, int agents);

}  // namespace odfl
