// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odfl/comm.hpp"
#include "odfl/convergence.hpp"
#include "odfl/dflsim.hpp"
#include "odfl/mixing.hpp"
#include "odfl/netmodel.hpp"

namespace odfl::cli {

enum class Router { Default, Local, Exact };

Router parse_router(const std::string& name);

struct Network {
    UnderlayNet net;
    PathTable paths;
    CategoryTable cats;

    explicit Network(UnderlayNet underlay);
};

struct RouteOptions {
    Router router = Router::Default;
    int relay_depth = 1;
    int local_budget = 1000;
    std::uint64_t seed = 0;
};

struct SimOptions {
    double eta = 0.05;
    int iterations = 2000;
    int seeds = 11;
    double sigma = 0.01;
    int dimension = 4;
    double center_spread = 0.0;
    double threshold = 1e-3;
};

struct DesignReport {
    std::string method;
    int T = 0;
    double rho = 1.0;
    double tau_bar = 0.0;
    double tau_opt = 0.0;
    double k_pred = 0.0;
    double total_pred = 0.0;
    double design_ms = 0.0;
};

struct MethodResult {
    DesignReport report;
    MixingMatrix design;
    Activation activation;
    DemandSet demands;
    RoutingSolution routing;
};

inline constexpr const char* kReportHeader = "method,T,rho,tau_bar,tau_opt,K_pred,total_pred,design_ms";

bool is_fmmd_method(const std::string& method);
/// Throws ConfigError on an unknown method name.
void check_method(const std::string& method);

/// Runs the named design. Benchmark topologies always get optimized weights.
MixingMatrix design_matrix(const Network& nw, const std::string& method, int T, double kappa);

struct Evaluation {
    double tau_bar = 0.0;
    double tau_opt = 0.0;
    Activation activation;
    DemandSet demands;
    RoutingSolution routing;
};

/// Routes the demands of `w` and returns both the default and the optimized time.
/// The optimized routing never exceeds the default one.
Evaluation evaluate_routing(const Network& nw, const MixingMatrix& w, double kappa, const RouteOptions& route);

/// design, route and predict. `timing` fills design_ms, which is otherwise 0 so
/// that repeated runs produce identical output.
MethodResult run_method(const Network& nw, const std::string& method, int T, double kappa, const RouteOptions& route,
                        const ConvergenceConstants& constants, bool timing);

DesignReport predict(const std::string& method, int T, double rho, const Evaluation& eval,
                     const ConvergenceConstants& constants);

std::string report_row(const DesignReport& r);

struct SimSummary {
    std::string method;
    int T = 0;
    std::uint64_t seed = 0;
    std::optional<int> iterations_to_consensus;
    double final_distance_to_opt = 0.0;
    double mean_consensus_distance = 0.0;
    std::optional<int> diverged_at;
};

inline constexpr const char* kSimHeader =
    "method,T,seed,iterations_to_consensus,final_distance_to_opt,mean_consensus_distance,diverged_at";

/// One D-PSGD run per seed in [seed, seed + options.seeds). Empty when rho(W) >= 1.
std::vector<SimSummary> simulate_design(const std::string& method, int T, const MixingMatrix& w,
                                        const SimOptions& options, std::uint64_t seed);

std::string sim_row(const SimSummary& s);

}  // namespace odfl::cli
