// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "odfl/comm.hpp"
#include "odfl/demand.hpp"
#include "odfl/netmodel.hpp"

namespace odfl {

struct ValidityReport {
    bool valid = true;
    std::string violation;  ///< first violated constraint, empty when valid

    explicit operator bool() const { return valid; }
};

/// Checks flow conservation per (flow, destination), r <= z, and that each z-set
/// is an arborescence rooted at the source reaching every destination.
ValidityReport validate_routing(const RoutingSolution& routing, const DemandSet& demands);

/// Every unicast uses the direct overlay link to its destination.
RoutingSolution default_routing(const DemandSet& demands);

/// Closed-form completion time of the default routing of `activated`.
double tau_bar(const Activation& activated, const CategoryTable& cats, double kappa);

/// Exact per-direction completion time of `routing` from category information.
double routing_time(const RoutingSolution& routing, const CategoryTable& cats, double kappa);

inline constexpr int kMaxExactAgents = 6;
inline constexpr int kMaxExactFlows = 6;

/// Candidate arborescences of one flow whose per-destination routes have at most
/// `relay_depth + 1` overlay hops, in exploration order: destinations in
/// ascending order, each route ordered by hop count then agent sequence.
std::vector<FlowRoute> candidate_trees(const MulticastFlow& flow, int agents, int relay_depth);

/// Minimum-tau routing over the restricted tree space by branch and bound.
///
/// Flows are branched in demand order and candidate trees in the order of
/// candidate_trees(); the first optimum found is returned, so the default
/// routing wins whenever it is optimal. Throws PreconditionError when the
/// instance exceeds kMaxExactAgents agents or kMaxExactFlows flows, or when
/// relay_depth is outside {1, 2}.
RoutingSolution optimize_routing_exact(const DemandSet& demands, const CategoryTable& cats,
                                       const UnderlayNet& net, int relay_depth = 1);

/// Hill climbing from the default routing: one unicast at a time moves to its
/// best route of at most two overlay hops. A move is taken only if it strictly
/// improves the descending-sorted utilization profile, whose first entry is tau.
/// `budget` bounds the number of unicast reassignment attempts; `seed` fixes the
/// visiting order of each pass.
RoutingSolution optimize_routing_local(const DemandSet& demands, const CategoryTable& cats, int budget = 1000,
                                       std::uint64_t seed = 0);

}  // namespace odfl
