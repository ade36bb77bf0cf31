// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "odfl/errors.hpp"
#include "odfl/io.hpp"
#include "odfl/routing.hpp"
#include "pipeline.hpp"

namespace odfl::cli {

namespace {

using nlohmann::json;

// JSON config files for CLI11. Top-level keys are flag names of the selected
// subcommand; an object keyed by a subcommand name scopes its keys explicitly.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(const CLI::App* root) : root_(root) {}

    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json doc;
        try {
            doc = json::parse(input);
        } catch (const json::parse_error& e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw CLI::ConversionError("config file must hold a JSON object");

        std::vector<std::string> scope;
        for (const auto* sub : root_->get_subcommands()) scope = {sub->get_name()};

        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : doc.items()) {
            if (value.is_object()) {
                for (const auto& [k, v] : value.items()) items.push_back(item({key}, k, v));
            } else {
                items.push_back(item(scope, key, value));
            }
        }
        return items;
    }

private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    }

    static CLI::ConfigItem item(std::vector<std::string> parents, const std::string& name, const json& v) {
        CLI::ConfigItem it;
        it.parents = std::move(parents);
        it.name = name;
        if (v.is_array())
            for (const auto& e : v) it.inputs.push_back(scalar(e));
        else
            it.inputs.push_back(scalar(v));
        return it;
    }

    const CLI::App* root_;
};

struct NetworkArgs {
    std::string topology;
};

struct RouteArgs {
    std::string router = "default";
    RouteOptions options;
};

void add_topology(CLI::App* sub, NetworkArgs& a) {
    sub->add_option("--topology", a.topology, "topology JSON file")->required();
}

void add_kappa(CLI::App* sub, double& kappa) {
    sub->add_option("--kappa", kappa, "model size in capacity units times seconds")->capture_default_str();
}

void add_route(CLI::App* sub, RouteArgs& a) {
    sub->add_option("--router", a.router, "routing solver: default, local or exact")->capture_default_str();
    sub->add_option("--relay-depth", a.options.relay_depth, "relays per route for the exact solver")
        ->capture_default_str();
    sub->add_option("--local-budget", a.options.local_budget, "reassignment attempts of the local solver")
        ->capture_default_str();
}

void add_constants(CLI::App* sub, ConvergenceConstants& c) {
    sub->add_option("--smoothness", c.smoothness)->capture_default_str();
    sub->add_option("--noise", c.noise, "gradient noise level of the bound")->capture_default_str();
    sub->add_option("--heterogeneity", c.heterogeneity)->capture_default_str();
    sub->add_option("--m1", c.m1)->capture_default_str();
    sub->add_option("--m2", c.m2)->capture_default_str();
    sub->add_option("--epsilon", c.epsilon)->capture_default_str();
    sub->add_option("--initial-gap", c.initial_gap)->capture_default_str();
}

void add_sim(CLI::App* sub, SimOptions& s) {
    sub->add_option("--eta", s.eta, "learning rate")->capture_default_str();
    sub->add_option("--sim-iterations", s.iterations, "D-PSGD steps")->capture_default_str();
    sub->add_option("--seeds", s.seeds, "number of simulation seeds")->capture_default_str();
    sub->add_option("--sigma", s.sigma, "gradient noise of the simulated task")->capture_default_str();
    sub->add_option("--dimension", s.dimension)->capture_default_str();
    sub->add_option("--center-spread", s.center_spread, "spread of the local optima")->capture_default_str();
    sub->add_option("--threshold", s.threshold, "consensus distance target")->capture_default_str();
}

Network open_network(const std::string& topology) {
    if (!std::filesystem::exists(topology)) throw ConfigError("topology file not found: " + topology);
    return Network(load_topology(topology));
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << text;
}

ConvergenceConstants with_agents(ConvergenceConstants c, int m) {
    c.agents = m;
    c.validate();
    return c;
}

DesignDocument open_design(const std::string& path, int agents) {
    if (!std::filesystem::exists(path)) throw ConfigError("design file not found: " + path);
    return parse_design(read_text_file(path), agents);
}

std::string describe_links(const UnderlayNet& net, const std::vector<std::size_t>& links) {
    std::string s;
    for (auto e : links) {
        if (!s.empty()) s += ' ';
        s += net.node_name(net.link(e).a) + "-" + net.node_name(net.link(e).b);
    }
    return s;
}

std::string describe_members(const UnderlayNet& net, const std::vector<OverlayLink>& members) {
    std::string s;
    for (const auto& l : members) {
        if (!s.empty()) s += ',';
        s += "(" + net.agent_name(l.i) + "," + net.agent_name(l.j) + ")";
    }
    return "{" + s + "}";
}

// Runs one experiment stage, prefixing any failure with the method name.
template <class F>
auto tagged(const std::string& method, F&& stage) {
    try {
        return stage();
    } catch (const ConfigError& e) {
        throw ConfigError(method + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError(method + ": " + e.what());
    } catch (const PreconditionError& e) {
        throw PreconditionError(method + ": " + e.what());
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Communication-efficient mixing design and routing for decentralized learning", "odfl"};
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "JSON file supplying any flag; explicit flags win");
    app.config_formatter(std::make_shared<JsonConfig>(&app));

    NetworkArgs net_args;
    RouteArgs route_args;
    ConvergenceConstants constants;
    SimOptions sim;
    double kappa = 1.0;
    std::string output;
    std::string method;
    std::string design_path;
    int T = 12;
    std::vector<int> Ts{12};
    std::vector<std::string> methods;
    std::uint64_t seed = 0;
    bool timing = false;
    bool simulate = false;
    std::string sim_output;

    auto* categories = app.add_subcommand("categories", "print the category table of a topology");
    add_topology(categories, net_args);
    categories->add_option("--output", output, "also write the table as JSON");

    auto* design = app.add_subcommand("design", "design a mixing matrix and report its predicted cost");
    add_topology(design, net_args);
    design->add_option("--method", method, "fmmd, fmmd-w, fmmd-p, fmmd-wp, ring, prim or clique")->required();
    design->add_option("--T", T, "FMMD iterations")->capture_default_str();
    add_kappa(design, kappa);
    add_route(design, route_args);
    add_constants(design, constants);
    design->add_option("--output", output, "design JSON file");
    design->add_flag("--timing", timing, "report wall-clock design time");

    auto* route = app.add_subcommand("route", "route the demands of a design");
    add_topology(route, net_args);
    route->add_option("--design", design_path, "design JSON file")->required();
    add_kappa(route, kappa);
    add_route(route, route_args);
    route->add_option("--seed", seed, "seed of the local solver")->capture_default_str();
    route->add_option("--output", output, "routing JSON file (stdout if omitted)");

    auto* predict_cmd = app.add_subcommand("predict", "predict the total training time of a design");
    add_topology(predict_cmd, net_args);
    predict_cmd->add_option("--design", design_path, "design JSON file")->required();
    add_kappa(predict_cmd, kappa);
    add_route(predict_cmd, route_args);
    predict_cmd->add_option("--seed", seed)->capture_default_str();
    add_constants(predict_cmd, constants);

    auto* simulate_cmd = app.add_subcommand("simulate", "run D-PSGD under a design and print its trace");
    add_topology(simulate_cmd, net_args);
    simulate_cmd->add_option("--design", design_path, "design JSON file")->required();
    add_sim(simulate_cmd, sim);
    simulate_cmd->add_option("--seed", seed)->capture_default_str();
    simulate_cmd->add_option("--output", output, "trace CSV file (stdout if omitted)");

    auto* experiment = app.add_subcommand("experiment", "compare methods end to end");
    add_topology(experiment, net_args);
    experiment->add_option("--methods", methods, "methods in output order")->required();
    experiment->add_option("--T", Ts, "FMMD iteration counts")->capture_default_str();
    add_kappa(experiment, kappa);
    add_route(experiment, route_args);
    add_constants(experiment, constants);
    experiment->add_option("--seed", seed, "base seed for routing and simulation")->capture_default_str();
    experiment->add_flag("--simulate", simulate, "also run D-PSGD per method");
    add_sim(experiment, sim);
    experiment->add_option("--output", output, "report CSV file (stdout if omitted)");
    experiment->add_option("--sim-output", sim_output, "simulation summary CSV file");
    experiment->add_flag("--timing", timing, "report wall-clock design time");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try {
        if (!(kappa > 0.0)) throw ConfigError("--kappa must be positive");
        route_args.options.router = parse_router(route_args.router);
        route_args.options.seed = seed;

        if (categories->parsed()) {
            const auto nw = open_network(net_args.topology);
            for (const auto& cat : nw.cats.categories())
                out << describe_members(nw.net, cat.members) << " C=" << format_number(cat.capacity)
                    << " links=" << describe_links(nw.net, cat.links) << "\n";
            if (!output.empty()) write_or_print(output, categories_to_json(nw.cats, &nw.net), out);
        } else if (design->parsed()) {
            const auto nw = open_network(net_args.topology);
            const auto c = with_agents(constants, nw.net.agent_count());
            const auto r = run_method(nw, method, T, kappa, route_args.options, c, timing);
            if (!output.empty()) write_or_print(output, design_to_json(method, r.design, r.report.rho), out);
            out << kReportHeader << "\n" << report_row(r.report) << "\n";
        } else if (route->parsed()) {
            const auto nw = open_network(net_args.topology);
            const auto doc = open_design(design_path, nw.net.agent_count());
            const auto eval = evaluate_routing(nw, doc.design, kappa, route_args.options);
            write_or_print(output, routing_to_json(eval.routing, eval.demands), out);
            err << "tau_bar=" << format_number(eval.tau_bar) << " tau_opt=" << format_number(eval.tau_opt) << "\n";
        } else if (predict_cmd->parsed()) {
            const auto nw = open_network(net_args.topology);
            const auto c = with_agents(constants, nw.net.agent_count());
            const auto doc = open_design(design_path, nw.net.agent_count());
            const auto eval = evaluate_routing(nw, doc.design, kappa, route_args.options);
            out << kReportHeader << "\n" << report_row(predict(doc.method, 0, doc.rho, eval, c)) << "\n";
        } else if (simulate_cmd->parsed()) {
            const auto nw = open_network(net_args.topology);
            const auto doc = open_design(design_path, nw.net.agent_count());
            TaskSpec spec;
            spec.agents = nw.net.agent_count();
            spec.dimension = sim.dimension;
            spec.center_spread = sim.center_spread;
            spec.noise = sim.sigma;
            spec.seed = seed;
            const auto run = run_dpsgd(make_quadratic_task(spec), doc.design, sim.eta, sim.iterations, seed);
            std::ostringstream csv;
            csv << "iteration,consensus_distance,mean_distance_to_opt\n";
            for (std::size_t k = 0; k < run.state.consensus_distance.size(); ++k)
                csv << k + 1 << "," << format_number(run.state.consensus_distance[k]) << ","
                    << format_number(run.state.distance_to_optimum[k]) << "\n";
            write_or_print(output, csv.str(), out);
            if (run.diverged_at) err << "diverged at iteration " << *run.diverged_at << "\n";
        } else if (experiment->parsed()) {
            if (methods.empty()) throw ConfigError("no methods given");
            if (simulate && sim_output.empty()) throw ConfigError("--simulate needs --sim-output");
            for (const auto& m : methods) check_method(m);
            const auto nw = open_network(net_args.topology);
            const auto c = with_agents(constants, nw.net.agent_count());
            std::ostringstream csv, sims;
            csv << kReportHeader << "\n";
            sims << kSimHeader << "\n";
            for (const auto& m : methods) {
                const std::vector<int> counts = is_fmmd_method(m) ? Ts : std::vector<int>{0};
                for (int t : counts) {
                    const auto r = tagged(m, [&] { return run_method(nw, m, t, kappa, route_args.options, c, timing); });
                    csv << report_row(r.report) << "\n";
                    if (simulate)
                        for (const auto& s : tagged(m, [&] { return simulate_design(m, r.report.T, r.design, sim, seed); }))
                            sims << sim_row(s) << "\n";
                }
            }
            write_or_print(output, csv.str(), out);
            if (simulate) write_or_print(sim_output, sims.str(), out);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return kExitOk;
}

}  // namespace odfl::cli
