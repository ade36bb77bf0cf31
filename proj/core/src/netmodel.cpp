// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "odfl/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "odfl/errors.hpp"

namespace odfl {

namespace {

std::string link_label(const std::string& a, const std::string& b) { return a + "-" + b; }

}  // namespace

UnderlayNet::UnderlayNet(std::vector<std::string> nodes, std::vector<LinkSpec> links,
                         std::vector<std::string> agents, std::vector<PathSpec> pinned_paths)
    : names_(std::move(nodes)) {
    for (std::size_t k = 0; k < names_.size(); ++k) {
        if (names_[k].empty()) throw InputError("node " + std::to_string(k) + " has an empty identifier");
        if (!index_.emplace(names_[k], k).second) throw InputError("duplicate node " + names_[k]);
    }
    if (names_.empty()) throw InputError("topology has no nodes");

    adjacency_.resize(names_.size());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& spec : links) {
        const auto label = link_label(spec.a, spec.b);
        auto a = find_node(spec.a);
        auto b = find_node(spec.b);
        if (!a || !b) throw InputError("link " + label + " references an unknown node");
        if (*a == *b) throw InputError("link " + label + " is a self-loop");
        if (!(spec.capacity > 0.0) || !std::isfinite(spec.capacity))
            throw InputError("link " + label + " has nonpositive capacity");
        if (!seen.emplace(std::min(*a, *b), std::max(*a, *b)).second)
            throw InputError("duplicate link " + label);
        const std::size_t e = links_.size();
        links_.push_back({*a, *b, spec.capacity});
        adjacency_[*a].emplace_back(*b, e);
        adjacency_[*b].emplace_back(*a, e);
    }

    std::set<std::size_t> agent_set;
    for (const auto& name : agents) {
        auto node = find_node(name);
        if (!node) throw InputError("agent " + name + " is not a node");
        if (!agent_set.insert(*node).second) throw InputError("duplicate agent " + name);
        agents_.push_back(*node);
    }
    if (agents_.size() < 2) throw InputError("at least two agents are required");

    // connectivity
    std::vector<bool> reached(names_.size(), false);
    std::deque<std::size_t> queue{0};
    reached[0] = true;
    std::size_t count = 1;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (const auto& [v, e] : adjacency_[u]) {
            if (!reached[v]) {
                reached[v] = true;
                ++count;
                queue.push_back(v);
            }
        }
    }
    if (count != names_.size()) {
        const auto it = std::find(reached.begin(), reached.end(), false);
        throw InputError("topology is disconnected: node " +
                         names_[static_cast<std::size_t>(it - reached.begin())] + " is unreachable");
    }

    for (const auto& spec : pinned_paths) {
        const auto label = "path " + spec.from + "->" + spec.to;
        auto from = find_agent(spec.from);
        auto to = find_agent(spec.to);
        if (!from || !to) throw InputError(label + " must join two agents");
        if (*from == *to) throw InputError(label + " joins an agent to itself");
        std::vector<std::size_t> seq;
        for (const auto& n : spec.nodes) {
            auto node = find_node(n);
            if (!node) throw InputError(label + " visits unknown node " + n);
            seq.push_back(*node);
        }
        if (seq.size() < 2 || seq.front() != agent_node(*from) || seq.back() != agent_node(*to))
            throw InputError(label + " does not connect its endpoints");
        std::set<std::size_t> visited(seq.begin(), seq.end());
        if (visited.size() != seq.size()) throw InputError(label + " is not simple");
        for (std::size_t k = 0; k + 1 < seq.size(); ++k)
            if (!find_link(seq[k], seq[k + 1]))
                throw InputError(label + " uses missing link " + link_label(names_[seq[k]], names_[seq[k + 1]]));
        if (*from > *to) std::reverse(seq.begin(), seq.end());
        if (!pinned_.emplace(make_link(*from, *to), std::move(seq)).second)
            throw InputError(label + " is pinned twice");
    }
}

std::optional<std::size_t> UnderlayNet::find_node(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> UnderlayNet::find_link(std::size_t u, std::size_t v) const {
    for (const auto& [w, e] : adjacency_.at(u))
        if (w == v) return e;
    return std::nullopt;
}

std::optional<int> UnderlayNet::find_agent(std::string_view name) const {
    auto node = find_node(name);
    if (!node) return std::nullopt;
    auto it = std::find(agents_.begin(), agents_.end(), *node);
    if (it == agents_.end()) return std::nullopt;
    return static_cast<int>(it - agents_.begin());
}

std::vector<LinkSpec> UnderlayNet::link_specs() const {
    std::vector<LinkSpec> out;
    out.reserve(links_.size());
    for (const auto& l : links_) out.push_back({names_[l.a], names_[l.b], l.capacity});
    return out;
}

std::vector<std::string> UnderlayNet::agent_names() const {
    std::vector<std::string> out;
    for (auto node : agents_) out.push_back(names_[node]);
    return out;
}

std::vector<PathSpec> UnderlayNet::pinned_specs() const {
    std::vector<PathSpec> out;
    for (const auto& [link, seq] : pinned_) {
        PathSpec spec{agent_name(link.i), agent_name(link.j), {}};
        for (auto node : seq) spec.nodes.push_back(names_[node]);
        out.push_back(std::move(spec));
    }
    return out;
}

// ---------------------------------------------------------------------------

PathTable::PathTable(int agents, std::size_t link_count, std::vector<std::vector<std::size_t>> node_paths,
                     std::vector<std::vector<std::size_t>> directed_links)
    : m_(agents), link_count_(link_count), nodes_(std::move(node_paths)), directed_(std::move(directed_links)) {
    if (nodes_.size() != pair_count(m_) || directed_.size() != pair_count(m_))
        throw InputError("path table does not cover every agent pair");
}

std::vector<std::size_t> PathTable::nodes(int from, int to) const {
    auto seq = nodes_.at(pair_index(make_link(from, to), m_));
    if (from > to) std::reverse(seq.begin(), seq.end());
    return seq;
}

std::vector<std::size_t> PathTable::directed_links(int from, int to) const {
    auto seq = directed_.at(pair_index(make_link(from, to), m_));
    if (from > to) {
        std::reverse(seq.begin(), seq.end());
        for (auto& d : seq) d ^= 1U;
    }
    return seq;
}

std::vector<std::size_t> PathTable::undirected_links(OverlayLink link) const {
    std::vector<std::size_t> out;
    for (auto d : directed_.at(pair_index(link, m_))) out.push_back(undirected_of(d));
    return out;
}

PathTable shortest_paths(const UnderlayNet& net) {
    const int m = net.agent_count();
    const std::size_t n = net.node_count();
    std::vector<std::vector<std::size_t>> node_paths;
    std::vector<std::vector<std::size_t>> directed;

    for (const auto link : complete_overlay(m)) {
        const auto src = net.agent_node(link.i);
        const auto dst = net.agent_node(link.j);
        std::vector<std::size_t> seq;

        if (auto pin = net.pinned_paths().find(link); pin != net.pinned_paths().end()) {
            seq = pin->second;
        } else {
            // hop distances to the destination, then walk greedily from the source
            // picking the smallest-named neighbor that is one hop closer
            constexpr auto unset = std::numeric_limits<std::size_t>::max();
            std::vector<std::size_t> dist(n, unset);
            std::deque<std::size_t> queue{dst};
            dist[dst] = 0;
            while (!queue.empty()) {
                const auto u = queue.front();
                queue.pop_front();
                for (const auto& [v, e] : net.neighbors(u)) {
                    if (dist[v] == unset) {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            seq.push_back(src);
            auto cur = src;
            while (cur != dst) {
                std::optional<std::size_t> best;
                for (const auto& [v, e] : net.neighbors(cur)) {
                    if (dist[v] + 1 != dist[cur]) continue;
                    if (!best || net.node_name(v) < net.node_name(*best)) best = v;
                }
                cur = *best;
                seq.push_back(cur);
            }
        }

        std::vector<std::size_t> hops;
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            const auto e = *net.find_link(seq[k], seq[k + 1]);
            hops.push_back(directed_id(e, net.link(e).a != seq[k]));
        }
        node_paths.push_back(std::move(seq));
        directed.push_back(std::move(hops));
    }
    return PathTable(m, net.link_count(), std::move(node_paths), std::move(directed));
}

// ---------------------------------------------------------------------------

CategoryTable::CategoryTable(int agents, std::vector<Category> categories)
    : m_(agents), categories_(std::move(categories)), by_link_(pair_count(agents)) {
    if (m_ < 2) throw InputError("category table needs at least two agents");
    for (auto& cat : categories_) {
        if (cat.members.empty()) throw InputError("category with an empty overlay link set");
        cat.members = normalize_activation(cat.members, m_);
        if (!(cat.capacity > 0.0) || !std::isfinite(cat.capacity))
            throw InputError("category has nonpositive capacity");
        if (cat.groups.empty())
            cat.groups.push_back({std::vector<bool>(cat.members.size(), true), cat.links, cat.capacity});
        for (const auto& g : cat.groups) {
            if (g.aligned.size() != cat.members.size())
                throw InputError("orientation group does not match its category's member count");
            if (!(g.capacity > 0.0)) throw InputError("orientation group has nonpositive capacity");
        }
    }
    std::sort(categories_.begin(), categories_.end(),
              [](const Category& x, const Category& y) { return x.members < y.members; });
    for (std::size_t k = 0; k < categories_.size(); ++k) {
        if (k > 0 && categories_[k].members == categories_[k - 1].members)
            throw InputError("duplicate category");
        for (const auto& link : categories_[k].members) by_link_[pair_index(link, m_)].push_back(k);
    }
}

double CategoryTable::min_capacity() const {
    double c = std::numeric_limits<double>::infinity();
    for (const auto& cat : categories_) c = std::min(c, cat.capacity);
    return c;
}

double CategoryTable::bottleneck(OverlayLink link) const {
    double c = std::numeric_limits<double>::infinity();
    for (auto k : categories_of(link)) c = std::min(c, categories_[k].capacity);
    return c;
}

const std::vector<std::size_t>& CategoryTable::categories_of(OverlayLink link) const {
    return by_link_.at(pair_index(link, m_));
}

std::optional<std::size_t> CategoryTable::member_position(std::size_t k, OverlayLink link) const {
    const auto& members = categories_.at(k).members;
    auto it = std::lower_bound(members.begin(), members.end(), link);
    if (it == members.end() || *it != link) return std::nullopt;
    return static_cast<std::size_t>(it - members.begin());
}

CategoryTable compute_categories(const UnderlayNet& net, const PathTable& paths) {
    const int m = paths.agent_count();
    const auto overlay = complete_overlay(m);

    // For each underlay link: the overlay links whose routes cross it and the
    // direction of each crossing.
    std::vector<std::vector<std::size_t>> users(net.link_count());
    std::vector<std::vector<bool>> aligned(net.link_count());
    for (std::size_t p = 0; p < overlay.size(); ++p) {
        for (auto d : paths.directed_links(overlay[p].i, overlay[p].j)) {
            users[undirected_of(d)].push_back(p);
            aligned[undirected_of(d)].push_back(d % 2 == 0);
        }
    }

    std::map<std::vector<std::size_t>, Category> by_members;
    for (std::size_t e = 0; e < net.link_count(); ++e) {
        if (users[e].empty()) continue;
        auto& cat = by_members[users[e]];
        if (cat.members.empty()) {
            for (auto p : users[e]) cat.members.push_back(overlay[p]);
            cat.capacity = std::numeric_limits<double>::infinity();
        }
        cat.links.push_back(e);
        cat.capacity = std::min(cat.capacity, net.link(e).capacity);
        auto g = std::find_if(cat.groups.begin(), cat.groups.end(),
                              [&](const OrientationGroup& og) { return og.aligned == aligned[e]; });
        if (g == cat.groups.end()) {
            cat.groups.push_back({aligned[e], {}, std::numeric_limits<double>::infinity()});
            g = std::prev(cat.groups.end());
        }
        g->links.push_back(e);
        g->capacity = std::min(g->capacity, net.link(e).capacity);
    }

    std::vector<Category> cats;
    cats.reserve(by_members.size());
    for (auto& [key, cat] : by_members) cats.push_back(std::move(cat));
    return CategoryTable(m, std::move(cats));
}

}  // namespace odfl
