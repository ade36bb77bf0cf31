// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "odfl/comm.hpp"
#include "odfl/errors.hpp"
#include "odfl/io.hpp"
#include "odfl/routing.hpp"
#include "support.hpp"

namespace odfl {
namespace {

struct Fig2 {
    UnderlayNet net = load_topology(testing::data_path("fig2.json"));
    PathTable paths = shortest_paths(net);
    CategoryTable cats = compute_categories(net, paths);

    std::size_t arc(const char* u, const char* v) const {
        const auto a = *net.find_node(u);
        const auto b = *net.find_node(v);
        const auto e = *net.find_link(a, b);
        return directed_id(e, net.link(e).a != a);
    }
};

constexpr int A = 0, B = 1, C = 2, D = 3;

TEST(Demands, OneFlowPerActiveAgent) {
    const auto h = demands_from_activation({{1, 2}}, 3, 1.0);
    ASSERT_EQ(h.flows.size(), 2u);
    EXPECT_EQ(h.flows[0], (MulticastFlow{1, {2}}));
    EXPECT_EQ(h.flows[1], (MulticastFlow{2, {1}}));
    EXPECT_TRUE(demands_from_activation({}, 3, 1.0).flows.empty());

    const auto star = demands_from_activation({{0, 1}, {0, 2}, {0, 3}}, 4, 1.0);
    ASSERT_EQ(star.flows.size(), 4u);
    EXPECT_EQ(star.flows[0].destinations.size(), 3u);
    EXPECT_THROW(demands_from_activation({{0, 1}}, 2, 0.0), InputError);
}

TEST(Loads, Fig2DefaultRouting) {
    const Fig2 f;
    const auto demands = demands_from_activation({{A, D}, {B, C}}, 4, 1.0);
    const auto loads = link_loads(default_routing(demands), f.paths);
    EXPECT_EQ(loads.links[f.arc("X", "Y")], 2);
    EXPECT_EQ(loads.links[f.arc("Y", "X")], 2);
    EXPECT_EQ(loads.links[f.arc("A", "X")], 1);
    EXPECT_TRUE(is_symmetric(loads));
    EXPECT_DOUBLE_EQ(completion_time(loads, f.net, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(completion_time_by_category(loads, f.cats, 1.0), 2.0);

    const auto oracle = maxmin_rate_oracle(default_routing(demands), f.net, f.paths);
    EXPECT_DOUBLE_EQ(*std::min_element(oracle.flow_rates.begin(), oracle.flow_rates.end()), 0.5);
    EXPECT_DOUBLE_EQ(oracle.completion_time(1.0), 2.0);
}

TEST(Loads, EmptyRouting) {
    const Fig2 f;
    const auto loads = link_loads({}, f.paths);
    EXPECT_TRUE(std::all_of(loads.links.begin(), loads.links.end(), [](int t) { return t == 0; }));
    EXPECT_DOUBLE_EQ(completion_time(loads, f.net, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(completion_time_by_category(loads, f.cats, 1.0), 0.0);
}

TEST(Loads, SingleFlowOnThreeHops) {
    const UnderlayNet net({"A", "B", "C", "D"}, {{"A", "B", 1}, {"B", "C", 3}, {"C", "D", 2}}, {"A", "D"});
    const auto paths = shortest_paths(net);
    RoutingSolution one{{{0, {{0, 1}}, {{0, 1}}}}};
    const auto loads = link_loads(one, paths);
    EXPECT_EQ(std::count(loads.links.begin(), loads.links.end(), 1), 3);
    EXPECT_DOUBLE_EQ(completion_time(loads, net, 1.0), 1.0);
    EXPECT_FALSE(is_symmetric(loads));
    EXPECT_THROW(category_loads(loads, compute_categories(net, paths)), PreconditionError);

    const auto oracle = maxmin_rate_oracle(one, net, paths);
    ASSERT_EQ(oracle.flow_rates.size(), 1u);
    EXPECT_DOUBLE_EQ(oracle.flow_rates[0], 1.0);  // path bottleneck
}

TEST(Loads, TwoFlowsSharingOneLinkSplitIt) {
    const UnderlayNet net({"A", "B", "H", "K"}, {{"A", "H", 5}, {"B", "H", 5}, {"H", "K", 1}}, {"A", "B", "K"});
    const auto paths = shortest_paths(net);
    RoutingSolution two{{{0, {{0, 2}}, {{0, 2}}}, {1, {{1, 2}}, {{1, 2}}}}};
    const auto oracle = maxmin_rate_oracle(two, net, paths);
    EXPECT_DOUBLE_EQ(oracle.flow_rates[0], 0.5);
    EXPECT_DOUBLE_EQ(oracle.flow_rates[1], 0.5);
}

TEST(Loads, DisjointPathsMatchPerCategory) {
    const UnderlayNet net({"A", "B"}, {{"A", "B", 1}}, {"A", "B"});
    const auto paths = shortest_paths(net);
    const auto demands = demands_from_activation({{0, 1}}, 2, 1.0);
    const auto loads = link_loads(default_routing(demands), paths);
    EXPECT_DOUBLE_EQ(completion_time(loads, net, 1.0), 1.0);
    EXPECT_EQ(completion_time_by_category(loads, compute_categories(net, paths), 1.0),
              completion_time(loads, net, 1.0));
}

class RandomInstanceProperties : public ::testing::TestWithParam<int> {};

TEST_P(RandomInstanceProperties, WaterFillingAndCategoryTimeAgree) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(GetParam()));
    const auto net = testing::random_net(rng, {});
    const auto paths = shortest_paths(net);
    const auto cats = compute_categories(net, paths);
    const int m = net.agent_count();
    const auto demands = demands_from_activation(testing::random_activation(rng, m), m, 1.5);

    for (const auto& routing : {default_routing(demands), testing::random_routing(rng, demands, 2)}) {
        ASSERT_TRUE(validate_routing(routing, demands).valid);
        const auto loads = link_loads(routing, paths);
        const double tau = completion_time(loads, net, demands.kappa);
        EXPECT_NEAR(tau, testing::waterfill_completion_time(routing, net, paths, demands.kappa), 1e-9 * tau);
        EXPECT_NEAR(tau, maxmin_rate_oracle(routing, net, paths).completion_time(demands.kappa), 1e-9 * tau);
        EXPECT_DOUBLE_EQ(tau, testing::arc_completion_time(routing, net, paths, demands.kappa));
        EXPECT_EQ(routing_time(routing, cats, demands.kappa), tau);
        if (is_symmetric(loads)) {
            EXPECT_EQ(completion_time_by_category(loads, cats, demands.kappa), tau);
        }
        EXPECT_DOUBLE_EQ(completion_time(loads, net, 3.0 * demands.kappa), 3.0 * tau);
    }
}

TEST_P(RandomInstanceProperties, AddingAFlowNeverDecreasesTau) {
    std::mt19937_64 rng(5000 + static_cast<std::uint64_t>(GetParam()));
    const auto net = testing::random_net(rng, {});
    const auto paths = shortest_paths(net);
    const int m = net.agent_count();
    auto act = testing::random_activation(rng, m, 0.3);
    const double before = completion_time(link_loads(default_routing(demands_from_activation(act, m, 1.0)), paths), net, 1.0);
    act = normalize_activation([&] { auto a = act; a.push_back(pair_at(0, m)); return a; }(), m);
    const double after = completion_time(link_loads(default_routing(demands_from_activation(act, m, 1.0)), paths), net, 1.0);
    EXPECT_GE(after, before);
}

TEST_P(RandomInstanceProperties, CapacityScalingDividesTau) {
    std::mt19937_64 rng(9000 + static_cast<std::uint64_t>(GetParam()));
    const auto net = testing::random_net(rng, {});
    auto specs = net.link_specs();
    for (auto& s : specs) s.capacity *= 4.0;
    const UnderlayNet fast(net.node_names(), specs, net.agent_names());
    const int m = net.agent_count();
    const auto demands = demands_from_activation(testing::random_activation(rng, m), m, 1.0);
    const auto routing = default_routing(demands);
    EXPECT_DOUBLE_EQ(completion_time(link_loads(routing, shortest_paths(fast)), fast, 1.0) * 4.0,
                     completion_time(link_loads(routing, shortest_paths(net)), net, 1.0));
}

INSTANTIATE_TEST_SUITE_P(RandomInstances, RandomInstanceProperties, ::testing::Range(0, 30));

}  // namespace
}  // namespace odfl
