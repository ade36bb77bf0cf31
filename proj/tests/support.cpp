// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#ifndef ODFL_TEST_DATA_DIR
#error "ODFL_TEST_DATA_DIR must be defined"
#endif

namespace odfl::testing {

std::string data_path(const std::string& name) { return std::string(ODFL_TEST_DATA_DIR) + "/" + name; }

UnderlayNet random_net(std::mt19937_64& rng, const RandomNetSpec& spec) {
    std::uniform_int_distribution<int> agents_dist(spec.min_agents, spec.max_agents);
    const int m = agents_dist(rng);
    std::uniform_int_distribution<int> nodes_dist(m, std::max(m, spec.max_nodes));
    const int n = nodes_dist(rng);
    std::uniform_real_distribution<double> cap(spec.min_capacity, spec.max_capacity);
    std::bernoulli_distribution extra(spec.extra_edge_probability);

    std::vector<std::string> names;
    for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    std::set<std::pair<int, int>> edges;
    for (int k = 1; k < n; ++k) {
        std::uniform_int_distribution<int> pick(0, k - 1);
        const int u = order[static_cast<std::size_t>(k)];
        const int v = order[static_cast<std::size_t>(pick(rng))];
        edges.insert({std::min(u, v), std::max(u, v)});
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (extra(rng)) edges.insert({u, v});

    std::vector<LinkSpec> links;
    for (auto [u, v] : edges) links.push_back({names[u], names[v], cap(rng)});

    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> agents;
    for (int k = 0; k < m; ++k) agents.push_back(names[order[static_cast<std::size_t>(k)]]);
    return UnderlayNet(names, links, agents);
}

Activation random_activation(std::mt19937_64& rng, int agents, double density) {
    std::bernoulli_distribution on(density);
    Activation a;
    for (const auto& l : complete_overlay(agents))
        if (on(rng)) a.push_back(l);
    if (a.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, pair_count(agents) - 1);
        a.push_back(pair_at(pick(rng), agents));
    }
    return a;
}

RoutingSolution random_routing(std::mt19937_64& rng, const DemandSet& demands, int relay_depth) {
    const int m = demands.agents;
    RoutingSolution out;
    for (const auto& flow : demands.flows) {
        // Grow a parent map: each destination is attached either directly or
        // below up to `relay_depth` relays, reusing parents already assigned.
        for (int attempt = 0;; ++attempt) {
            std::vector<int> parent(static_cast<std::size_t>(m), -1);
            std::vector<std::vector<int>> paths;
            bool ok = true;
            for (int d : flow.destinations) {
                std::vector<int> seq{flow.source};
                std::uniform_int_distribution<int> depth_dist(0, attempt < 20 ? relay_depth : 0);
                const int relays = depth_dist(rng);
                std::vector<int> pool;
                for (int r = 0; r < m; ++r)
                    if (r != flow.source && r != d) pool.push_back(r);
                std::shuffle(pool.begin(), pool.end(), rng);
                for (int k = 0; k < relays && k < static_cast<int>(pool.size()); ++k) seq.push_back(pool[k]);
                seq.push_back(d);
                for (std::size_t q = 0; q + 1 < seq.size() && ok; ++q) {
                    auto& p = parent[static_cast<std::size_t>(seq[q + 1])];
                    if (p == -1)
                        p = seq[q];
                    else if (p != seq[q])
                        ok = false;
                }
                if (!ok) break;
                paths.push_back(seq);
            }
            if (!ok) continue;
            std::set<OverlayHop> tree;
            for (const auto& p : paths)
                for (std::size_t q = 0; q + 1 < p.size(); ++q) tree.insert({p[q], p[q + 1]});
            out.flows.push_back({flow.source, {tree.begin(), tree.end()}, paths});
            break;
        }
    }
    return out;
}

MixingMatrix random_mixing(std::mt19937_64& rng, int agents, double density) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::bernoulli_distribution on(density);
    std::vector<double> alpha(pair_count(agents), 0.0);
    for (auto& a : alpha)
        if (on(rng)) a = gauss(rng);
    return MixingMatrix::from_weights(alpha, agents);
}

std::vector<UnicastLinks> unicast_arcs(const RoutingSolution& routing, const PathTable& paths) {
    std::vector<UnicastLinks> out;
    for (std::size_t h = 0; h < routing.flows.size(); ++h) {
        for (const auto& hop : routing.flows[h].tree) {
            const auto nodes = paths.nodes(hop.from, hop.to);
            UnicastLinks u{h, {}};
            for (std::size_t q = 0; q + 1 < nodes.size(); ++q) u.arcs.push_back({nodes[q], nodes[q + 1]});
            out.push_back(std::move(u));
        }
    }
    return out;
}

namespace {

double arc_capacity(const UnderlayNet& net, std::pair<std::size_t, std::size_t> arc) {
    return net.link(*net.find_link(arc.first, arc.second)).capacity;
}

}  // namespace

double arc_completion_time(const RoutingSolution& routing, const UnderlayNet& net, const PathTable& paths,
                           double kappa) {
    std::map<std::pair<std::size_t, std::size_t>, int> load;
    for (const auto& u : unicast_arcs(routing, paths))
        for (const auto& a : u.arcs) ++load[a];
    double tau = 0.0;
    for (const auto& [arc, t] : load) tau = std::max(tau, kappa * t / arc_capacity(net, arc));
    return tau;
}

double waterfill_completion_time(const RoutingSolution& routing, const UnderlayNet& net, const PathTable& paths,
                                 double kappa) {
    const auto unicasts = unicast_arcs(routing, paths);
    if (unicasts.empty()) return 0.0;
    std::map<std::pair<std::size_t, std::size_t>, double> residual;
    for (const auto& u : unicasts)
        for (const auto& a : u.arcs) residual[a] = arc_capacity(net, a);

    std::vector<double> rate(unicasts.size(), 0.0);
    std::vector<bool> frozen(unicasts.size(), false);
    // a unicast whose overlay hop maps to an empty path never saturates; it
    // cannot happen because agents are distinct nodes
    while (std::find(frozen.begin(), frozen.end(), false) != frozen.end()) {
        std::map<std::pair<std::size_t, std::size_t>, int> users;
        for (std::size_t u = 0; u < unicasts.size(); ++u)
            if (!frozen[u])
                for (const auto& a : unicasts[u].arcs) ++users[a];
        double step = std::numeric_limits<double>::infinity();
        for (const auto& [a, n] : users) step = std::min(step, residual[a] / n);
        std::set<std::pair<std::size_t, std::size_t>> full;
        for (const auto& [a, n] : users) {
            residual[a] -= step * n;
            if (residual[a] <= 1e-12 * arc_capacity(net, a)) full.insert(a);
        }
        for (std::size_t u = 0; u < unicasts.size(); ++u) {
            if (frozen[u]) continue;
            rate[u] += step;
            for (const auto& a : unicasts[u].arcs)
                if (full.contains(a)) frozen[u] = true;
        }
    }
    std::vector<double> flow_rate(routing.flows.size(), std::numeric_limits<double>::infinity());
    for (std::size_t u = 0; u < unicasts.size(); ++u)
        flow_rate[unicasts[u].flow] = std::min(flow_rate[unicasts[u].flow], rate[u]);
    double tau = 0.0;
    for (double r : flow_rate)
        if (std::isfinite(r)) tau = std::max(tau, kappa / r);
    return tau;
}

double exhaustive_min_time(const DemandSet& demands, const UnderlayNet& net, const PathTable& paths,
                           int relay_depth) {
    const int m = demands.agents;
    // Every simple agent sequence s -> ... -> d with at most relay_depth relays.
    auto routes = [&](int s, int d) {
        std::vector<std::vector<int>> out;
        std::vector<int> seq{s};
        std::function<void()> walk = [&] {
            if (static_cast<int>(seq.size()) - 1 <= relay_depth) {
                seq.push_back(d);
                out.push_back(seq);
                seq.pop_back();
            }
            if (static_cast<int>(seq.size()) - 1 >= relay_depth) return;
            for (int r = 0; r < m; ++r) {
                if (r == d || std::find(seq.begin(), seq.end(), r) != seq.end()) continue;
                seq.push_back(r);
                walk();
                seq.pop_back();
            }
        };
        walk();
        return out;
    };

    // Distinct arborescences per flow, found by trying every route tuple.
    std::vector<std::vector<FlowRoute>> trees(demands.flows.size());
    for (std::size_t h = 0; h < demands.flows.size(); ++h) {
        const auto& flow = demands.flows[h];
        std::vector<std::vector<std::vector<int>>> options;
        for (int d : flow.destinations) options.push_back(routes(flow.source, d));
        std::set<std::vector<OverlayHop>> seen;
        std::vector<std::vector<int>> pick;
        std::function<void(std::size_t)> choose = [&](std::size_t q) {
            if (q == options.size()) {
                std::set<OverlayHop> hops;
                for (const auto& p : pick)
                    for (std::size_t k = 0; k + 1 < p.size(); ++k) hops.insert({p[k], p[k + 1]});
                std::vector<int> indeg(static_cast<std::size_t>(m), 0);
                for (const auto& e : hops) ++indeg[static_cast<std::size_t>(e.to)];
                if (indeg[static_cast<std::size_t>(flow.source)] != 0) return;
                if (std::any_of(indeg.begin(), indeg.end(), [](int x) { return x > 1; })) return;
                std::vector<OverlayHop> tree(hops.begin(), hops.end());
                if (seen.insert(tree).second) trees[h].push_back({flow.source, tree, pick});
                return;
            }
            for (const auto& p : options[q]) {
                pick.push_back(p);
                choose(q + 1);
                pick.pop_back();
            }
        };
        choose(0);
    }

    // Arc loads of each tree, so the product over flows only adds counters.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> arc_index;
    std::vector<double> arc_cap;
    std::vector<std::vector<std::vector<std::size_t>>> tree_arcs(trees.size());
    for (std::size_t h = 0; h < trees.size(); ++h) {
        for (const auto& t : trees[h]) {
            RoutingSolution one{{t}};
            std::vector<std::size_t> ids;
            for (const auto& u : unicast_arcs(one, paths)) {
                for (const auto& a : u.arcs) {
                    auto [it, fresh] = arc_index.try_emplace(a, arc_cap.size());
                    if (fresh) arc_cap.push_back(arc_capacity(net, a));
                    ids.push_back(it->second);
                }
            }
            tree_arcs[h].push_back(std::move(ids));
        }
    }

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> load(arc_cap.size(), 0);
    std::function<void(std::size_t)> combine = [&](std::size_t h) {
        if (h == trees.size()) {
            double tau = 0.0;
            for (std::size_t a = 0; a < load.size(); ++a) tau = std::max(tau, demands.kappa * load[a] / arc_cap[a]);
            best = std::min(best, tau);
            return;
        }
        for (const auto& ids : tree_arcs[h]) {
            for (auto a : ids) ++load[a];
            combine(h + 1);
            for (auto a : ids) --load[a];
        }
    };
    combine(0);
    return best;
}

double rho_by_svd(const Eigen::MatrixXd& w) {
    const auto m = w.rows();
    const Eigen::MatrixXd j = Eigen::MatrixXd::Constant(m, m, 1.0 / static_cast<double>(m));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w - j);
    return svd.singularValues()(0);
}

}  // namespace odfl::testing
