// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "odfl/overlay.hpp"

namespace odfl {

struct LinkSpec {
    std::string a;
    std::string b;
    double capacity = 0.0;
};

/// Explicit underlay route for one agent pair, overriding hop-count routing.
struct PathSpec {
    std::string from;
    std::string to;
    std::vector<std::string> nodes;
};

struct UnderlayLink {
    std::size_t a = 0;
    std::size_t b = 0;
    double capacity = 0.0;
};

/// Each undirected underlay link `e` is carried as two directed copies:
/// `2e` in the stored a->b orientation and `2e+1` for b->a.
constexpr std::size_t directed_id(std::size_t link, bool reverse) { return 2 * link + (reverse ? 1 : 0); }
constexpr std::size_t undirected_of(std::size_t directed) { return directed / 2; }

/// Validated underlay graph with agent placement.
///
/// Invariants (checked on construction, violations throw InputError naming the
/// offending entity): connected graph, unique node ids, no parallel links,
/// positive finite capacities, at least two distinct agents hosted on known nodes.
class UnderlayNet {
public:
    UnderlayNet(std::vector<std::string> nodes, std::vector<LinkSpec> links, std::vector<std::string> agents,
                std::vector<PathSpec> pinned_paths = {});

    std::size_t node_count() const { return names_.size(); }
    std::size_t link_count() const { return links_.size(); }
    int agent_count() const { return static_cast<int>(agents_.size()); }

    const std::string& node_name(std::size_t node) const { return names_.at(node); }
    std::optional<std::size_t> find_node(std::string_view name) const;
    std::optional<std::size_t> find_link(std::size_t u, std::size_t v) const;

    const UnderlayLink& link(std::size_t e) const { return links_.at(e); }
    const std::vector<UnderlayLink>& links() const { return links_; }
    double directed_capacity(std::size_t directed) const { return links_.at(undirected_of(directed)).capacity; }

    /// (neighbor node, link id) pairs of `node`.
    const std::vector<std::pair<std::size_t, std::size_t>>& neighbors(std::size_t node) const {
        return adjacency_.at(node);
    }

    std::size_t agent_node(int agent) const { return agents_.at(static_cast<std::size_t>(agent)); }
    const std::string& agent_name(int agent) const { return names_.at(agent_node(agent)); }
    std::optional<int> find_agent(std::string_view name) const;

    /// Pinned underlay routes keyed by overlay link, stored in the i -> j orientation.
    const std::map<OverlayLink, std::vector<std::size_t>>& pinned_paths() const { return pinned_; }

    std::vector<std::string> node_names() const { return names_; }
    std::vector<LinkSpec> link_specs() const;
    std::vector<std::string> agent_names() const;
    std::vector<PathSpec> pinned_specs() const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<UnderlayLink> links_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
    std::vector<std::size_t> agents_;
    std::map<OverlayLink, std::vector<std::size_t>> pinned_;
};

/// Underlay route p_{i,j} of every agent pair. Stored once per unordered pair in
/// the i -> j orientation (i < j); queries for j -> i return the reversal.
class PathTable {
public:
    PathTable(int agents, std::size_t link_count, std::vector<std::vector<std::size_t>> node_paths,
              std::vector<std::vector<std::size_t>> directed_links);

    int agent_count() const { return m_; }
    std::size_t link_count() const { return link_count_; }

    std::vector<std::size_t> nodes(int from, int to) const;
    std::vector<std::size_t> directed_links(int from, int to) const;
    /// Underlay link ids of p_{i,j} in path order.
    std::vector<std::size_t> undirected_links(OverlayLink link) const;

private:
    int m_;
    std::size_t link_count_;
    std::vector<std::vector<std::size_t>> nodes_;
    std::vector<std::vector<std::size_t>> directed_;
};

/// Hop-count shortest routes; ties go to the lexicographically smallest sequence
/// of node identifiers. Pinned routes from the net take precedence.
PathTable shortest_paths(const UnderlayNet& net);

/// Links of one category that every member route crosses in the same relative
/// orientation. `aligned[k]` tells whether the k-th member of F, routed i -> j,
/// crosses these links in their stored a -> b direction.
struct OrientationGroup {
    std::vector<bool> aligned;
    std::vector<std::size_t> links;
    double capacity = 0.0;
};

/// Category Gamma_F: the underlay links traversed by and only by the routes of F.
struct Category {
    std::vector<OverlayLink> members;
    std::vector<std::size_t> links;
    double capacity = 0.0;
    std::vector<OrientationGroup> groups;
};

/// The nonempty categories with their bottleneck capacities.
class CategoryTable {
public:
    CategoryTable(int agents, std::vector<Category> categories);

    int agent_count() const { return m_; }
    std::size_t size() const { return categories_.size(); }
    const std::vector<Category>& categories() const { return categories_; }
    const Category& operator[](std::size_t k) const { return categories_.at(k); }

    double min_capacity() const;
    /// Bottleneck capacity of the route of `link`, or +inf if no category holds it.
    double bottleneck(OverlayLink link) const;
    /// Indices of the categories whose member set contains `link`.
    const std::vector<std::size_t>& categories_of(OverlayLink link) const;
    /// Position of `link` inside `categories()[k].members`, if present.
    std::optional<std::size_t> member_position(std::size_t k, OverlayLink link) const;

private:
    int m_;
    std::vector<Category> categories_;
    std::vector<std::vector<std::size_t>> by_link_;
};

CategoryTable compute_categories(const UnderlayNet& net, const PathTable& paths);

}  // namespace odfl
