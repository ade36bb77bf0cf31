// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <string>

#include "odfl/comm.hpp"
#include "odfl/io.hpp"
#include "odfl/mixing.hpp"
#include "odfl/netmodel.hpp"
#include "odfl/routing.hpp"

namespace {

using namespace odfl;

struct Fixture {
    UnderlayNet net;
    PathTable paths;
    CategoryTable cats;

    explicit Fixture(const std::string& file)
        : net(load_topology(std::string(ODFL_BENCH_DATA_DIR) + "/" + file)),
          paths(shortest_paths(net)),
          cats(compute_categories(net, paths)) {}
};

const Fixture& roofnet() {
    static const Fixture f("roofnet_like.json");
    return f;
}

void BM_Categories(benchmark::State& state) {
    const auto& f = roofnet();
    for (auto _ : state) benchmark::DoNotOptimize(compute_categories(f.net, f.paths));
}
BENCHMARK(BM_Categories)->Unit(benchmark::kMillisecond);

void BM_Fmmd(benchmark::State& state) {
    const auto& f = roofnet();
    FmmdOptions opt;
    opt.iterations = static_cast<int>(state.range(0));
    opt.weight_opt = state.range(1) & 1;
    opt.priority = state.range(1) & 2;
    for (auto _ : state) benchmark::DoNotOptimize(fmmd(f.cats, opt));
}
BENCHMARK(BM_Fmmd)->ArgsProduct({{12, 48}, {0, 1, 2, 3}})->Unit(benchmark::kMillisecond);

void BM_ExactRouting(benchmark::State& state) {
    static const Fixture f("fig2.json");
    const auto demands = demands_from_activation(complete_overlay(4), 4, 1.0);
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(optimize_routing_exact(demands, f.cats, f.net, depth));
}
BENCHMARK(BM_ExactRouting)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_LocalRouting(benchmark::State& state) {
    const auto& f = roofnet();
    const auto demands = demands_from_activation(complete_overlay(10), 10, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(optimize_routing_local(demands, f.cats, 1000, 0));
}
BENCHMARK(BM_LocalRouting)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
