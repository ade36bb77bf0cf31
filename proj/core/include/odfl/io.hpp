// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "odfl/demand.hpp"
#include "odfl/mixing.hpp"
#include "odfl/netmodel.hpp"

namespace odfl {

/// Parses a topology document:
///
///   {"nodes": [..], "links": [{"a", "b", "capacity"}], "agents": [..],
///    "paths": [{"from", "to", "nodes": [..]}]}
///
/// "paths" is optional and pins the underlay route of an agent pair. Unknown
/// keys, malformed JSON and invalid graphs throw InputError.
UnderlayNet parse_topology(std::string_view text);
UnderlayNet load_topology(const std::filesystem::path& file);

std::string topology_to_json(const UnderlayNet& net);

/// {"agents": m, "categories": [{"members": [[i, j]..], "links": [..],
/// "capacity": c, "groups": [{"aligned": [..], "links": [..], "capacity": c}]}]}.
/// With `net`, each category also lists "link_names" ("a-b"), which the parser ignores.
std::string categories_to_json(const CategoryTable& cats, const UnderlayNet* net = nullptr);
/// Accepts inferred tables; "groups" may be omitted.
CategoryTable parse_categories(std::string_view text);

struct DesignDocument {
    std::string method;
    MixingMatrix design;
    double rho = 1.0;
};

/// {"method": .., "alpha": [{"i", "j", "w"}], "rho": ..}, listing nonzero weights only.
std::string design_to_json(std::string_view method, const MixingMatrix& w, double rho);
DesignDocument parse_design(std::string_view text, int agents);

/// {"flows": [{"source", "z": [{"from", "to"}], "r": [{"destination", "path": [..]}]}]}.
std::string routing_to_json(const RoutingSolution& routing, const DemandSet& demands);

/// Nine significant digits, as used in every CSV column.
std::string format_number(double x);

std::string read_text_file(const std::filesystem::path& file);

}  // namespace odfl
