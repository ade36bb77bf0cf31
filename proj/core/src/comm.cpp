// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "odfl/comm.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "odfl/errors.hpp"

namespace odfl {

DemandSet demands_from_activation(const Activation& activated, int agents, double kappa) {
    if (!(kappa > 0.0)) throw InputError("data size kappa must be positive");
    std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(agents));
    for (const auto& link : normalize_activation(activated, agents)) {
        neighbors[static_cast<std::size_t>(link.i)].push_back(link.j);
        neighbors[static_cast<std::size_t>(link.j)].push_back(link.i);
    }
    DemandSet demands{agents, kappa, {}};
    for (int i = 0; i < agents; ++i) {
        auto& nb = neighbors[static_cast<std::size_t>(i)];
        if (nb.empty()) continue;
        std::sort(nb.begin(), nb.end());
        demands.flows.push_back({i, std::move(nb)});
    }
    return demands;
}

LoadProfile link_loads(const RoutingSolution& routing, const PathTable& paths) {
    const int m = paths.agent_count();
    LoadProfile loads{m, std::vector<int>(2 * paths.link_count(), 0),
                      std::vector<int>(static_cast<std::size_t>(m * m), 0)};
    for (const auto& flow : routing.flows) {
        for (const auto& hop : flow.tree) {
            ++loads.hops[static_cast<std::size_t>(hop.from * m + hop.to)];
            for (auto d : paths.directed_links(hop.from, hop.to)) ++loads.links[d];
        }
    }
    return loads;
}

bool is_symmetric(const LoadProfile& loads) {
    for (int i = 0; i < loads.agents; ++i)
        for (int j = i + 1; j < loads.agents; ++j)
            if (loads.hop_count(i, j) != loads.hop_count(j, i)) return false;
    return true;
}

double completion_time(const LoadProfile& loads, const UnderlayNet& net, double kappa) {
    double tau = 0.0;
    for (std::size_t d = 0; d < loads.links.size(); ++d)
        if (loads.links[d] > 0) tau = std::max(tau, kappa * loads.links[d] / net.directed_capacity(d));
    return tau;
}

std::vector<int> category_loads(const LoadProfile& loads, const CategoryTable& cats) {
    for (int i = 0; i < loads.agents; ++i)
        for (int j = i + 1; j < loads.agents; ++j)
            if (loads.hop_count(i, j) != loads.hop_count(j, i))
                throw PreconditionError("asymmetric demand on overlay link (" + std::to_string(i) + "," +
                                        std::to_string(j) + "): category accounting needs symmetric loads");
    std::vector<int> counts;
    counts.reserve(cats.size());
    for (const auto& cat : cats.categories()) {
        int t = 0;
        for (const auto& link : cat.members) t += loads.hop_count(link.i, link.j);
        counts.push_back(t);
    }
    return counts;
}

double completion_time_by_category(const LoadProfile& loads, const CategoryTable& cats, double kappa) {
    const auto counts = category_loads(loads, cats);
    double tau = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k)
        if (counts[k] > 0) tau = std::max(tau, kappa * counts[k] / cats[k].capacity);
    return tau;
}

double MaxMinAllocation::completion_time(double kappa) const {
    double tau = 0.0;
    for (double r : flow_rates) tau = std::max(tau, kappa / r);
    return tau;
}

MaxMinAllocation maxmin_rate_oracle(const RoutingSolution& routing, const UnderlayNet& net,
                                    const PathTable& paths) {
    MaxMinAllocation out;
    std::vector<std::vector<std::size_t>> crossings;
    for (std::size_t h = 0; h < routing.flows.size(); ++h) {
        for (const auto& hop : routing.flows[h].tree) {
            out.unicasts.push_back({h, hop, 0.0});
            crossings.push_back(paths.directed_links(hop.from, hop.to));
        }
    }

    const std::size_t links = 2 * net.link_count();
    std::vector<double> remaining(links);
    for (std::size_t d = 0; d < links; ++d) remaining[d] = net.directed_capacity(d);
    std::vector<bool> frozen(out.unicasts.size(), false);
    std::size_t active = out.unicasts.size();

    while (active > 0) {
        std::vector<int> users(links, 0);
        for (std::size_t u = 0; u < crossings.size(); ++u)
            if (!frozen[u])
                for (auto d : crossings[u]) ++users[d];

        double delta = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < links; ++d)
            if (users[d] > 0) delta = std::min(delta, remaining[d] / users[d]);

        for (std::size_t u = 0; u < crossings.size(); ++u)
            if (!frozen[u]) out.unicasts[u].rate += delta;
        std::vector<bool> saturated(links, false);
        for (std::size_t d = 0; d < links; ++d) {
            if (users[d] == 0) continue;
            remaining[d] -= delta * users[d];
            if (remaining[d] <= 1e-12 * net.directed_capacity(d)) saturated[d] = true;
        }
        for (std::size_t u = 0; u < crossings.size(); ++u) {
            if (frozen[u]) continue;
            if (std::any_of(crossings[u].begin(), crossings[u].end(), [&](auto d) { return saturated[d]; })) {
                frozen[u] = true;
                --active;
            }
        }
    }

    out.flow_rates.assign(routing.flows.size(), std::numeric_limits<double>::infinity());
    for (const auto& u : out.unicasts) out.flow_rates[u.flow] = std::min(out.flow_rates[u.flow], u.rate);
    // flows with an empty tree carry nothing
    std::erase_if(out.flow_rates, [](double r) { return r == std::numeric_limits<double>::infinity(); });
    return out;
}

// ---------------------------------------------------------------------------

CategoryLoadModel::CategoryLoadModel(const CategoryTable& cats)
    : m_(cats.agent_count()), hop_resources_(static_cast<std::size_t>(m_ * m_)) {
    for (std::size_t k = 0; k < cats.size(); ++k) {
        const auto& cat = cats[k];
        for (const auto& group : cat.groups) {
            const auto base = static_cast<std::uint32_t>(capacity_.size());
            capacity_.push_back(group.capacity);  // stored a -> b
            capacity_.push_back(group.capacity);  // b -> a
            for (std::size_t p = 0; p < cat.members.size(); ++p) {
                const auto [i, j] = cat.members[p];
                const bool forward_ab = group.aligned[p];
                hop_resources_[static_cast<std::size_t>(i * m_ + j)].push_back(base + (forward_ab ? 0U : 1U));
                hop_resources_[static_cast<std::size_t>(j * m_ + i)].push_back(base + (forward_ab ? 1U : 0U));
            }
        }
    }
}

void CategoryLoadModel::add(std::vector<int>& counts, OverlayHop hop, int delta) const {
    for (auto r : resources(hop.from, hop.to)) counts[r] += delta;
}

std::vector<int> CategoryLoadModel::counts(const RoutingSolution& routing) const {
    std::vector<int> c(resource_count(), 0);
    for (const auto& flow : routing.flows)
        for (const auto& hop : flow.tree) add(c, hop);
    return c;
}

double CategoryLoadModel::time(std::span<const int> counts, double kappa) const {
    double tau = 0.0;
    for (std::size_t r = 0; r < counts.size(); ++r)
        if (counts[r] > 0) tau = std::max(tau, kappa * counts[r] / capacity_[r]);
    return tau;
}

}  // namespace odfl
