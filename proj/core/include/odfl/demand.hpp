// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "odfl/overlay.hpp"

namespace odfl {

/// Multicast flow h: the source's parameters go to every activated neighbor.
struct MulticastFlow {
    int source = 0;
    std::vector<int> destinations;  // sorted, never contains `source`

    friend bool operator==(const MulticastFlow&, const MulticastFlow&) = default;
};

/// Demands H triggered by an activation. One uniform data size per run.
struct DemandSet {
    int agents = 0;
    double kappa = 1.0;
    std::vector<MulticastFlow> flows;  // ordered by source
};

/// Overlay Steiner arborescence of one flow.
///
/// `tree` is the set of directed overlay hops with z = 1; `paths[k]` is the
/// agent sequence of the route to `destinations[k]` of the matching flow (r = 1
/// on its consecutive hops).
struct FlowRoute {
    int source = 0;
    std::vector<OverlayHop> tree;
    std::vector<std::vector<int>> paths;

    friend bool operator==(const FlowRoute&, const FlowRoute&) = default;
};

/// One route per flow of a DemandSet, in the same order.
struct RoutingSolution {
    std::vector<FlowRoute> flows;

    friend bool operator==(const RoutingSolution&, const RoutingSolution&) = default;
};

}  // namespace odfl
