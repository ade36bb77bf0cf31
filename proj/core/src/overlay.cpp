// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "odfl/overlay.hpp"

#include <algorithm>
#include <string>

#include "odfl/errors.hpp"

namespace odfl {

OverlayLink make_link(int a, int b) { return a < b ? OverlayLink{a, b} : OverlayLink{b, a}; }

std::size_t pair_count(int m) {
    if (m < 2) return 0;
    const auto n = static_cast<std::size_t>(m);
    return n * (n - 1) / 2;
}

std::size_t pair_index(OverlayLink link, int m) {
    const auto i = static_cast<std::size_t>(link.i);
    const auto j = static_cast<std::size_t>(link.j);
    const auto n = static_cast<std::size_t>(m);
    // rows 0..i-1 contribute (n-1) + (n-2) + ... + (n-i) entries
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

OverlayLink pair_at(std::size_t index, int m) {
    int i = 0;
    std::size_t row = static_cast<std::size_t>(m - 1);
    while (index >= row) {
        index -= row;
        --row;
        ++i;
    }
    return {i, i + 1 + static_cast<int>(index)};
}

Activation complete_overlay(int m) {
    Activation all;
    all.reserve(pair_count(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) all.push_back({i, j});
    return all;
}

Activation normalize_activation(std::vector<OverlayLink> links, int m) {
    for (auto& l : links) {
        if (l.i == l.j || l.i < 0 || l.j < 0 || l.i >= m || l.j >= m)
            throw InputError("invalid overlay link (" + std::to_string(l.i) + "," +
                             std::to_string(l.j) + ") for " + std::to_string(m) + " agents");
        l = make_link(l.i, l.j);
    }
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    return links;
}

}  // namespace odfl
