// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "odfl/errors.hpp"
#include "odfl/io.hpp"
#include "odfl/routing.hpp"

namespace odfl::cli {

Router parse_router(const std::string& name) {
    if (name == "default") return Router::Default;
    if (name == "local") return Router::Local;
    if (name == "exact") return Router::Exact;
    throw ConfigError("unknown router \"" + name + "\" (expected default, local or exact)");
}

Network::Network(UnderlayNet underlay)
    : net(std::move(underlay)), paths(shortest_paths(net)), cats(compute_categories(net, paths)) {}

bool is_fmmd_method(const std::string& method) { return method.starts_with("fmmd"); }

void check_method(const std::string& method) {
    if (method == "fmmd" || method == "fmmd-w" || method == "fmmd-p" || method == "fmmd-wp") return;
    if (parse_benchmark_topology(method)) return;
    throw ConfigError("unknown method \"" + method + "\"");
}

MixingMatrix design_matrix(const Network& nw, const std::string& method, int T, double kappa) {
    check_method(method);
    const int m = nw.net.agent_count();
    if (auto kind = parse_benchmark_topology(method))
        return optimize_weights(benchmark_topology(*kind, nw.cats, kappa, m), m).matrix(m);
    if (T < 1) throw ConfigError("FMMD needs T >= 1");
    FmmdOptions opts;
    opts.iterations = T;
    opts.weight_opt = method == "fmmd-w" || method == "fmmd-wp";
    opts.priority = method == "fmmd-p" || method == "fmmd-wp";
    opts.kappa = kappa;
    return fmmd(nw.cats, opts).design;
}

Evaluation evaluate_routing(const Network& nw, const MixingMatrix& w, double kappa, const RouteOptions& route) {
    const int m = nw.net.agent_count();
    Evaluation e;
    e.activation = w.activation();
    e.demands = demands_from_activation(e.activation, m, kappa);
    e.tau_bar = tau_bar(e.activation, nw.cats, kappa);
    switch (route.router) {
        case Router::Default: e.routing = default_routing(e.demands); break;
        case Router::Local:
            e.routing = optimize_routing_local(e.demands, nw.cats, route.local_budget, route.seed);
            break;
        case Router::Exact: e.routing = optimize_routing_exact(e.demands, nw.cats, nw.net, route.relay_depth); break;
    }
    e.tau_opt = routing_time(e.routing, nw.cats, kappa);
    if (e.tau_opt > e.tau_bar) {
        e.routing = default_routing(e.demands);
        e.tau_opt = e.tau_bar;
    }
    return e;
}

DesignReport predict(const std::string& method, int T, double rho, const Evaluation& eval,
                     const ConvergenceConstants& constants) {
    const auto total = total_time(eval.tau_opt, rho, constants);
    return {method, T, rho, eval.tau_bar, eval.tau_opt, total.iterations, total.product, 0.0};
}

MethodResult run_method(const Network& nw, const std::string& method, int T, double kappa, const RouteOptions& route,
                        const ConvergenceConstants& constants, bool timing) {
    const auto start = std::chrono::steady_clock::now();
    auto w = design_matrix(nw, method, T, kappa);
    const auto stop = std::chrono::steady_clock::now();

    auto eval = evaluate_routing(nw, w, kappa, route);
    auto c = constants;
    c.agents = nw.net.agent_count();
    auto report = predict(method, is_fmmd_method(method) ? T : 0, rho(w), eval, c);
    if (timing) report.design_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return {std::move(report), std::move(w), std::move(eval.activation), std::move(eval.demands),
            std::move(eval.routing)};
}

std::string report_row(const DesignReport& r) {
    return r.method + "," + std::to_string(r.T) + "," + format_number(r.rho) + "," + format_number(r.tau_bar) + "," +
           format_number(r.tau_opt) + "," + format_number(r.k_pred) + "," + format_number(r.total_pred) + "," +
           format_number(r.design_ms);
}

std::vector<SimSummary> simulate_design(const std::string& method, int T, const MixingMatrix& w,
                                        const SimOptions& options, std::uint64_t seed) {
    std::vector<SimSummary> out;
    if (rho(w) >= 1.0 - kRhoTolerance) return out;
    for (int s = 0; s < options.seeds; ++s) {
        const std::uint64_t run_seed = seed + static_cast<std::uint64_t>(s);
        TaskSpec spec;
        spec.agents = w.size();
        spec.dimension = options.dimension;
        spec.center_spread = options.center_spread;
        spec.noise = options.sigma;
        spec.seed = run_seed;
        const auto task = make_quadratic_task(spec);
        const auto run = run_dpsgd(task, w, options.eta, options.iterations, run_seed);
        out.push_back({method, T, run_seed, iterations_to_consensus(run.state, options.threshold),
                       run.final_distance_to_optimum, run.mean_consensus_distance, run.diverged_at});
    }
    return out;
}

std::string sim_row(const SimSummary& s) {
    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
    return s.method + "," + std::to_string(s.T) + "," + std::to_string(s.seed) + "," + opt(s.iterations_to_consensus) +
           "," + format_number(s.final_distance_to_opt) + "," + format_number(s.mean_consensus_distance) + "," +
           opt(s.diverged_at);
}

}  // namespace odfl::cli
