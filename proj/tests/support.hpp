// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

// Instance generators and brute-force oracles shared by the unit and
// acceptance tests. The oracles work on underlay node sequences directly and
// never go through categories, orientation groups or the branch-and-bound.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "odfl/demand.hpp"
#include "odfl/mixing.hpp"
#include "odfl/netmodel.hpp"

namespace odfl::testing {

std::string data_path(const std::string& name);

struct RandomNetSpec {
    int min_agents = 2;
    int max_agents = 6;
    int max_nodes = 12;
    double min_capacity = 1.0;
    double max_capacity = 4.0;
    double extra_edge_probability = 0.2;
};

/// Connected random underlay (random spanning tree plus extra links) with
/// agents on a random subset of its nodes.
UnderlayNet random_net(std::mt19937_64& rng, const RandomNetSpec& spec);

/// Random nonempty activation of the complete overlay on `agents` agents.
Activation random_activation(std::mt19937_64& rng, int agents, double density = 0.5);

/// One random arborescence per flow, each destination reached in at most
/// `relay_depth + 1` overlay hops.
RoutingSolution random_routing(std::mt19937_64& rng, const DemandSet& demands, int relay_depth);

/// Random symmetric matrix with unit row sums (weights on every overlay link).
MixingMatrix random_mixing(std::mt19937_64& rng, int agents, double density = 1.0);

/// Directed crossings of every unicast, keyed by (from node, to node).
struct UnicastLinks {
    std::size_t flow = 0;
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
};
std::vector<UnicastLinks> unicast_arcs(const RoutingSolution& routing, const PathTable& paths);

/// kappa * max load / capacity over directed underlay arcs.
double arc_completion_time(const RoutingSolution& routing, const UnderlayNet& net, const PathTable& paths,
                           double kappa);

/// Progressive filling: all unfrozen unicasts grow at the same rate until an arc
/// saturates, then every unicast through it freezes. Returns kappa / min flow rate.
double waterfill_completion_time(const RoutingSolution& routing, const UnderlayNet& net, const PathTable& paths,
                                 double kappa);

/// Minimum arc_completion_time over every combination of per-destination
/// routes of at most `relay_depth + 1` hops whose union is an arborescence.
double exhaustive_min_time(const DemandSet& demands, const UnderlayNet& net, const PathTable& paths,
                           int relay_depth);

/// Largest singular value of W - J, computed by SVD.
double rho_by_svd(const Eigen::MatrixXd& w);

}  // namespace odfl::testing
