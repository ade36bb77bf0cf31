// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "odfl/comm.hpp"
#include "odfl/errors.hpp"
#include "odfl/io.hpp"
#include "odfl/routing.hpp"
#include "support.hpp"

namespace odfl {
namespace {

TEST(Topology, RoofnetScaleFileLoads) {
    const auto net = load_topology(testing::data_path("roofnet_like.json"));
    EXPECT_EQ(net.node_count(), 38u);
    EXPECT_EQ(net.link_count(), 219u);
    EXPECT_EQ(net.agent_count(), 10);
}

TEST(Topology, RejectsUnknownKeysAndBadJson) {
    EXPECT_THROW(parse_topology(R"({"nodes":["A","B"],"links":[{"a":"A","b":"B","capacity":1}],"agents":["A","B"],"x":1})"),
                 InputError);
    EXPECT_THROW(parse_topology(R"({"nodes":["A","B"],"links":[{"a":"A","b":"B","capacity":1,"delay":0}],"agents":["A","B"]})"),
                 InputError);
    EXPECT_THROW(parse_topology(R"({"nodes":["A","B"],"links":[{"a":"A","b":"B","capacity":"fast"}],"agents":["A","B"]})"),
                 InputError);
    EXPECT_THROW(parse_topology(R"({"nodes":["A","B"],"links":[]})"), InputError);
    EXPECT_THROW(parse_topology("{not json"), InputError);
    EXPECT_THROW(load_topology("/nonexistent/topology.json"), InputError);
}

TEST(Topology, JsonRoundTrip) {
    const auto net = load_topology(testing::data_path("fig2.json"));
    const auto text = topology_to_json(net);
    EXPECT_EQ(topology_to_json(parse_topology(text)), text);
    EXPECT_EQ(parse_topology(text).pinned_paths().size(), 2u);
}

TEST(Categories, JsonRoundTripKeepsGroups) {
    const auto net = load_topology(testing::data_path("fig2.json"));
    const auto cats = compute_categories(net, shortest_paths(net));
    const auto text = categories_to_json(cats);
    const auto back = parse_categories(categories_to_json(cats, &net));
    EXPECT_EQ(categories_to_json(back), text);

    // same tau from the parsed table as from the computed one
    const auto demands = demands_from_activation(complete_overlay(4), 4, 1.0);
    const auto routing = optimize_routing_local(demands, cats);
    EXPECT_DOUBLE_EQ(routing_time(routing, back, 1.0), routing_time(routing, cats, 1.0));
}

TEST(Categories, InferredTableWithoutGroups) {
    const auto cats = parse_categories(R"({"agents":3,"categories":[{"members":[[0,1],[1,2]],"capacity":2},
                                           {"members":[[0,2]],"capacity":1}]})");
    EXPECT_EQ(cats.size(), 2u);
    EXPECT_DOUBLE_EQ(tau_bar(complete_overlay(3), cats, 1.0), 1.0);
}

TEST(Design, JsonRoundTrip) {
    std::vector<double> alpha{0.25, 0.0, 0.5};
    const auto w = MixingMatrix::from_weights(alpha, 3);
    const auto text = design_to_json("ring", w, rho(w));
    const auto doc = parse_design(text, 3);
    EXPECT_EQ(doc.method, "ring");
    EXPECT_EQ(doc.design.weights(), w.weights());
    EXPECT_DOUBLE_EQ(doc.rho, rho(w));
    EXPECT_EQ(text.find("\"w\": 0.0"), std::string::npos);
    EXPECT_THROW(parse_design(R"({"method":"x","alpha":[{"i":0,"j":0,"w":1}]})", 3), InputError);
    EXPECT_THROW(parse_design(R"({"method":"x","alpha":[{"i":0,"j":7,"w":1}]})", 3), InputError);
}

TEST(Routing, JsonListsTreesAndPaths) {
    const auto demands = demands_from_activation({{0, 1}, {0, 2}}, 3, 1.0);
    const auto text = routing_to_json(default_routing(demands), demands);
    EXPECT_NE(text.find("\"destination\": 2"), std::string::npos);
    EXPECT_NE(text.find("\"z\""), std::string::npos);
}

TEST(Csv, NineSignificantDigits) {
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
    EXPECT_EQ(format_number(2.0), "2");
    EXPECT_EQ(format_number(123456789012.0), "1.23456789e+11");
}

}  // namespace
}  // namespace odfl
