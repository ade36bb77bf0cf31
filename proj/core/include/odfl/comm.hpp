// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "odfl/demand.hpp"
#include "odfl/netmodel.hpp"

namespace odfl {

/// H = {(i, N(i), kappa) : N(i) nonempty}, flows ordered by source agent.
DemandSet demands_from_activation(const Activation& activated, int agents, double kappa);

/// Activated unicast flow counts.
struct LoadProfile {
    int agents = 0;
    std::vector<int> links;  ///< t per directed underlay link (see directed_id)
    std::vector<int> hops;   ///< unicasts per directed overlay hop, row-major [from * agents + to]

    int hop_count(int from, int to) const { return hops.at(static_cast<std::size_t>(from * agents + to)); }
};

LoadProfile link_loads(const RoutingSolution& routing, const PathTable& paths);

/// True when every overlay link carries as many unicasts one way as the other.
bool is_symmetric(const LoadProfile& loads);

/// max over directed underlay links of kappa * t / C (zero without flows).
double completion_time(const LoadProfile& loads, const UnderlayNet& net, double kappa);

/// t_F per category. Throws PreconditionError for asymmetric loads, which the
/// undirected category accounting cannot express.
std::vector<int> category_loads(const LoadProfile& loads, const CategoryTable& cats);

/// max over categories of kappa * t_F / C_F. Same preconditions as category_loads.
double completion_time_by_category(const LoadProfile& loads, const CategoryTable& cats, double kappa);

/// Result of progressive filling over the activated unicast flows.
struct MaxMinAllocation {
    struct Unicast {
        std::size_t flow;
        OverlayHop hop;
        double rate;
    };
    std::vector<Unicast> unicasts;
    std::vector<double> flow_rates;  ///< slowest constituent rate per multicast flow

    /// max over flows of kappa / flow rate, zero without flows.
    double completion_time(double kappa) const;
};

/// Max-min fair rates under per-direction capacities, computed by water-filling.
MaxMinAllocation maxmin_rate_oracle(const RoutingSolution& routing, const UnderlayNet& net,
                                    const PathTable& paths);

/// Directed load accounting driven by a CategoryTable only.
///
/// A resource is one orientation group of one category in one direction; a
/// unicast over a directed overlay hop loads every resource its underlay route
/// crosses. The per-resource maximum of kappa * count / capacity equals the
/// per-link completion time for any routing, symmetric or not.
class CategoryLoadModel {
public:
    explicit CategoryLoadModel(const CategoryTable& cats);

    int agent_count() const { return m_; }
    std::size_t resource_count() const { return capacity_.size(); }
    double capacity(std::size_t r) const { return capacity_[r]; }
    const std::vector<std::uint32_t>& resources(int from, int to) const {
        return hop_resources_[static_cast<std::size_t>(from * m_ + to)];
    }

    void add(std::vector<int>& counts, OverlayHop hop, int delta = 1) const;
    std::vector<int> counts(const RoutingSolution& routing) const;
    double time(std::span<const int> counts, double kappa) const;

private:
    int m_;
    std::vector<double> capacity_;
    std::vector<std::vector<std::uint32_t>> hop_resources_;
};

}  // namespace odfl
