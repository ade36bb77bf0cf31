// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace odfl {

/// Undirected overlay link between agents `i < j` (0-based agent indices).
struct OverlayLink {
    int i = 0;
    int j = 0;

    friend auto operator<=>(const OverlayLink&, const OverlayLink&) = default;
};

/// Directed overlay hop `from -> to`.
struct OverlayHop {
    int from = 0;
    int to = 0;

    friend auto operator<=>(const OverlayHop&, const OverlayHop&) = default;
};

/// Sorted, duplicate-free set of activated overlay links.
using Activation = std::vector<OverlayLink>;

/// Builds an `OverlayLink` with endpoints ordered so that `i < j`.
OverlayLink make_link(int a, int b);

/// Number of overlay links of the complete overlay on `m` agents.
std::size_t pair_count(int m);

/// Position of link (i,j) in the lexicographic enumeration of the complete overlay.
std::size_t pair_index(OverlayLink link, int m);

/// Inverse of `pair_index`.
OverlayLink pair_at(std::size_t index, int m);

/// All overlay links of the complete overlay in lexicographic order.
Activation complete_overlay(int m);

/// Sorts and deduplicates; throws InputError on self-loops or out-of-range agents.
Activation normalize_activation(std::vector<OverlayLink> links, int m);

}  // namespace odfl
