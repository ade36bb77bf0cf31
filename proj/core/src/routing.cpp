// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "odfl/routing.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "odfl/errors.hpp"

namespace odfl {

namespace {

std::string hop_str(int u, int v) { return "(" + std::to_string(u) + "->" + std::to_string(v) + ")"; }

// Routes from s to k with at most relay_depth relays, ordered by hop count then sequence.
std::vector<std::vector<int>> candidate_paths(int s, int k, int agents, int relay_depth) {
    std::vector<std::vector<int>> out;
    std::vector<int> seq{s};
    std::function<void(int)> grow = [&](int relays_left) {
        if (relays_left == 0) {
            seq.push_back(k);
            out.push_back(seq);
            seq.pop_back();
            return;
        }
        for (int r = 0; r < agents; ++r) {
            if (r == k || std::find(seq.begin(), seq.end(), r) != seq.end()) continue;
            seq.push_back(r);
            grow(relays_left - 1);
            seq.pop_back();
        }
    };
    for (int relays = 0; relays <= relay_depth; ++relays) grow(relays);
    return out;
}

std::vector<OverlayHop> tree_of(const std::vector<std::vector<int>>& paths) {
    std::set<OverlayHop> edges;
    for (const auto& p : paths)
        for (std::size_t q = 0; q + 1 < p.size(); ++q) edges.insert({p[q], p[q + 1]});
    return {edges.begin(), edges.end()};
}

bool is_arborescence(int source, const std::vector<OverlayHop>& tree, int agents) {
    std::vector<int> parent(static_cast<std::size_t>(agents), -1);
    for (const auto& e : tree) {
        if (e.to == source || parent[static_cast<std::size_t>(e.to)] != -1) return false;
        parent[static_cast<std::size_t>(e.to)] = e.from;
    }
    return true;
}

using SparseLoad = std::vector<std::pair<std::uint32_t, int>>;

SparseLoad sparse_load(const CategoryLoadModel& model, const std::vector<OverlayHop>& tree) {
    std::map<std::uint32_t, int> acc;
    for (const auto& hop : tree)
        for (auto r : model.resources(hop.from, hop.to)) ++acc[r];
    return {acc.begin(), acc.end()};
}

// Utilization values sorted in descending order; the first entry is tau.
std::vector<double> profile(const CategoryLoadModel& model, const std::vector<int>& counts, double kappa) {
    std::vector<double> u;
    for (std::size_t r = 0; r < counts.size(); ++r)
        if (counts[r] > 0) u.push_back(kappa * counts[r] / model.capacity(r));
    std::sort(u.begin(), u.end(), std::greater<>());
    return u;
}

}  // namespace

ValidityReport validate_routing(const RoutingSolution& routing, const DemandSet& demands) {
    auto fail = [](std::string msg) { return ValidityReport{false, std::move(msg)}; };
    const int m = demands.agents;
    if (routing.flows.size() != demands.flows.size())
        return fail("routing has " + std::to_string(routing.flows.size()) + " flows, demands have " +
                    std::to_string(demands.flows.size()));

    for (std::size_t h = 0; h < demands.flows.size(); ++h) {
        const auto& demand = demands.flows[h];
        const auto& route = routing.flows[h];
        const auto tag = "flow " + std::to_string(h);
        if (route.source != demand.source) return fail(tag + ": source mismatch");
        if (route.paths.size() != demand.destinations.size())
            return fail(tag + ": expected one route per destination");

        std::set<OverlayHop> z;
        for (const auto& e : route.tree) {
            if (e.from < 0 || e.to < 0 || e.from >= m || e.to >= m || e.from == e.to)
                return fail(tag + ": invalid tree hop " + hop_str(e.from, e.to));
            if (!z.insert(e).second) return fail(tag + ": z not binary at " + hop_str(e.from, e.to));
        }

        for (std::size_t q = 0; q < demand.destinations.size(); ++q) {
            const int k = demand.destinations[q];
            const auto& path = route.paths[q];
            const auto dtag = tag + ", destination " + std::to_string(k);
            std::map<OverlayHop, int> r;
            for (std::size_t p = 0; p + 1 < path.size(); ++p) {
                const int u = path[p];
                const int v = path[p + 1];
                if (u < 0 || v < 0 || u >= m || v >= m || u == v)
                    return fail(dtag + ": invalid hop " + hop_str(u, v));
                if (++r[{u, v}] > 1) return fail(dtag + ": r not binary at " + hop_str(u, v));
            }
            // sum_j r_ij - sum_j r_ji = b_i
            std::vector<int> balance(static_cast<std::size_t>(m), 0);
            for (const auto& [e, cnt] : r) {
                balance[static_cast<std::size_t>(e.from)] += cnt;
                balance[static_cast<std::size_t>(e.to)] -= cnt;
            }
            for (int i = 0; i < m; ++i) {
                const int b = (i == demand.source) - (i == k);
                if (balance[static_cast<std::size_t>(i)] != b)
                    return fail(dtag + ": flow conservation violated at agent " + std::to_string(i));
            }
            for (const auto& [e, cnt] : r)
                if (!z.contains(e)) return fail(dtag + ": r <= z violated at " + hop_str(e.from, e.to));
        }

        // z must be an arborescence rooted at the source
        std::vector<int> parent(static_cast<std::size_t>(m), -1);
        for (const auto& e : z) {
            if (e.to == demand.source) return fail(tag + ": tree enters the source at " + hop_str(e.from, e.to));
            if (parent[static_cast<std::size_t>(e.to)] != -1)
                return fail(tag + ": agent " + std::to_string(e.to) + " has two parents in the tree");
            parent[static_cast<std::size_t>(e.to)] = e.from;
        }
        for (const auto& e : z) {
            int v = e.to;
            int steps = 0;
            while (v != demand.source) {
                v = parent[static_cast<std::size_t>(v)];
                if (v == -1 || ++steps > m) return fail(tag + ": tree hop " + hop_str(e.from, e.to) +
                                                        " is not reachable from the source");
            }
        }
    }
    return {};
}

RoutingSolution default_routing(const DemandSet& demands) {
    RoutingSolution sol;
    for (const auto& flow : demands.flows) {
        FlowRoute route{flow.source, {}, {}};
        for (int k : flow.destinations) {
            route.tree.push_back({flow.source, k});
            route.paths.push_back({flow.source, k});
        }
        sol.flows.push_back(std::move(route));
    }
    return sol;
}

double tau_bar(const Activation& activated, const CategoryTable& cats, double kappa) {
    const auto links = normalize_activation(activated, cats.agent_count());
    double tau = 0.0;
    for (const auto& cat : cats.categories()) {
        std::size_t shared = 0;
        for (const auto& l : links)
            if (std::binary_search(cat.members.begin(), cat.members.end(), l)) ++shared;
        if (shared > 0) tau = std::max(tau, kappa / cat.capacity * static_cast<double>(shared));
    }
    return tau;
}

double routing_time(const RoutingSolution& routing, const CategoryTable& cats, double kappa) {
    CategoryLoadModel model(cats);
    return model.time(model.counts(routing), kappa);
}

std::vector<FlowRoute> candidate_trees(const MulticastFlow& flow, int agents, int relay_depth) {
    std::vector<std::vector<std::vector<int>>> per_dest;
    for (int k : flow.destinations) per_dest.push_back(candidate_paths(flow.source, k, agents, relay_depth));

    std::vector<FlowRoute> out;
    std::vector<int> parent(static_cast<std::size_t>(agents), -1);
    std::vector<std::vector<int>> chosen;

    std::function<void(std::size_t)> extend = [&](std::size_t q) {
        if (q == per_dest.size()) {
            out.push_back({flow.source, tree_of(chosen), chosen});
            return;
        }
        for (const auto& path : per_dest[q]) {
            bool ok = true;
            for (std::size_t p = 0; p + 1 < path.size() && ok; ++p) {
                const int v = path[p + 1];
                const int pv = parent[static_cast<std::size_t>(v)];
                ok = v != flow.source && (pv == -1 || pv == path[p]);
            }
            if (!ok) continue;
            std::vector<int> assigned;
            for (std::size_t p = 0; p + 1 < path.size(); ++p) {
                auto& pv = parent[static_cast<std::size_t>(path[p + 1])];
                if (pv == -1) {
                    pv = path[p];
                    assigned.push_back(path[p + 1]);
                }
            }
            chosen.push_back(path);
            extend(q + 1);
            chosen.pop_back();
            for (int v : assigned) parent[static_cast<std::size_t>(v)] = -1;
        }
    };
    extend(0);
    return out;
}

RoutingSolution optimize_routing_exact(const DemandSet& demands, const CategoryTable& cats,
                                       const UnderlayNet& net, int relay_depth) {
    const int m = net.agent_count();
    if (m > kMaxExactAgents || static_cast<int>(demands.flows.size()) > kMaxExactFlows)
        throw PreconditionError("instance too large for exact routing (" + std::to_string(m) + " agents, " +
                                std::to_string(demands.flows.size()) + " flows; limit " +
                                std::to_string(kMaxExactAgents) + "/" + std::to_string(kMaxExactFlows) + ")");
    if (relay_depth < 1 || relay_depth > 2) throw PreconditionError("relay depth must be 1 or 2");
    if (cats.agent_count() != m || demands.agents != m)
        throw PreconditionError("demands, categories and network disagree on the number of agents");
    if (demands.flows.empty()) return {};

    const CategoryLoadModel model(cats);
    const std::size_t R = model.resource_count();
    const std::size_t H = demands.flows.size();

    std::vector<std::vector<FlowRoute>> candidates(H);
    std::vector<std::vector<SparseLoad>> loads(H);
    // rest[h][r]: sum over flows h..H-1 of the least load any candidate puts on r
    std::vector<std::vector<int>> rest(H + 1, std::vector<int>(R, 0));
    for (std::size_t h = 0; h < H; ++h) {
        candidates[h] = candidate_trees(demands.flows[h], m, relay_depth);
        std::vector<int> least(R, std::numeric_limits<int>::max());
        for (const auto& c : candidates[h]) {
            loads[h].push_back(sparse_load(model, c.tree));
            std::vector<int> dense(R, 0);
            for (auto [r, n] : loads[h].back()) dense[r] = n;
            for (std::size_t r = 0; r < R; ++r) least[r] = std::min(least[r], dense[r]);
        }
        rest[h] = std::move(least);
    }
    for (std::size_t h = H; h-- > 0;)
        for (std::size_t r = 0; r < R; ++r) rest[h][r] += rest[h + 1][r];

    const double kappa = demands.kappa;
    std::vector<int> counts(R, 0);
    std::vector<std::size_t> pick(H, 0);
    std::vector<std::size_t> best_pick;
    double best = std::numeric_limits<double>::infinity();

    std::function<void(std::size_t)> branch = [&](std::size_t h) {
        if (h == H) {
            const double tau = model.time(counts, kappa);
            if (tau < best) {
                best = tau;
                best_pick = pick;
            }
            return;
        }
        for (std::size_t c = 0; c < candidates[h].size(); ++c) {
            for (auto [r, n] : loads[h][c]) counts[r] += n;
            double bound = 0.0;
            for (std::size_t r = 0; r < R; ++r) {
                const int t = counts[r] + rest[h + 1][r];
                if (t > 0) bound = std::max(bound, kappa * t / model.capacity(r));
            }
            if (bound < best) {
                pick[h] = c;
                branch(h + 1);
            }
            for (auto [r, n] : loads[h][c]) counts[r] -= n;
        }
    };
    branch(0);

    RoutingSolution sol;
    for (std::size_t h = 0; h < H; ++h) sol.flows.push_back(candidates[h][best_pick[h]]);
    return sol;
}

RoutingSolution optimize_routing_local(const DemandSet& demands, const CategoryTable& cats, int budget,
                                       std::uint64_t seed) {
    const int m = cats.agent_count();
    if (demands.agents != m) throw PreconditionError("demands and categories disagree on the number of agents");
    RoutingSolution sol = default_routing(demands);
    if (sol.flows.empty()) return sol;

    const CategoryLoadModel model(cats);
    const double kappa = demands.kappa;
    std::vector<int> counts = model.counts(sol);
    auto current = profile(model, counts, kappa);

    std::vector<std::pair<std::size_t, std::size_t>> unicasts;
    for (std::size_t h = 0; h < demands.flows.size(); ++h)
        for (std::size_t q = 0; q < demands.flows[h].destinations.size(); ++q) unicasts.emplace_back(h, q);

    std::mt19937_64 rng(seed);
    int attempts = 0;
    bool improved = true;
    while (improved && attempts < budget) {
        improved = false;
        auto order = unicasts;
        std::shuffle(order.begin(), order.end(), rng);
        for (const auto& [h, q] : order) {
            if (attempts >= budget) break;
            ++attempts;
            auto& route = sol.flows[h];
            const int s = route.source;
            const int k = demands.flows[h].destinations[q];

            for (const auto& hop : route.tree) model.add(counts, hop, -1);
            const auto original = route.paths[q];
            std::optional<std::vector<int>> best_path;
            std::vector<OverlayHop> best_tree;
            auto best_profile = current;

            for (const auto& path : candidate_paths(s, k, m, 1)) {
                if (path == original) continue;
                route.paths[q] = path;
                auto tree = tree_of(route.paths);
                if (!is_arborescence(s, tree, m)) continue;
                for (const auto& hop : tree) model.add(counts, hop, +1);
                auto prof = profile(model, counts, kappa);
                for (const auto& hop : tree) model.add(counts, hop, -1);
                if (prof < best_profile) {
                    best_profile = std::move(prof);
                    best_path = path;
                    best_tree = std::move(tree);
                }
            }
            if (best_path) {
                route.paths[q] = *best_path;
                route.tree = std::move(best_tree);
                current = std::move(best_profile);
                improved = true;
            } else {
                route.paths[q] = original;
            }
            for (const auto& hop : route.tree) model.add(counts, hop, +1);
        }
    }
    return sol;
}

}  // namespace odfl
