#!/usr/bin/env python3
# SPDX-FileCopyrightText: © 2026 The odfl Authors
#
# SPDX-License-Identifier: Apache-2.0
"""Generates the synthetic topologies shipped in data/.

roofnet_like: 38 nodes, 219 unit-capacity links on a seeded random geometric
layout, agents on the 10 lowest-degree nodes.
bottleneck10: 10 agents spread over 5 sites joined by a slow backbone ring.
"""

import argparse
import json
import math
import random


def roofnet_like(seed: int) -> dict:
    rng = random.Random(seed)
    n, target = 38, 219
    names = [f"n{k:02d}" for k in range(n)]
    pos = [(rng.random(), rng.random()) for _ in range(n)]

    def dist(u, v):
        return math.dist(pos[u], pos[v])

    # Nearest-neighbor spanning tree keeps the graph connected, then the
    # shortest remaining pairs are added until the link count is reached.
    edges = set()
    seen = {0}
    while len(seen) < n:
        u, v = min(((u, v) for u in seen for v in range(n) if v not in seen), key=lambda e: dist(*e))
        edges.add((min(u, v), max(u, v)))
        seen.add(v)
    pairs = sorted(((u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges),
                   key=lambda e: dist(*e))
    for e in pairs[: target - len(edges)]:
        edges.add(e)

    degree = [0] * n
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    agents = sorted(range(n), key=lambda k: (degree[k], names[k]))[:10]
    return {
        "nodes": names,
        "links": [{"a": names[u], "b": names[v], "capacity": 1} for u, v in sorted(edges)],
        "agents": [names[k] for k in sorted(agents)],
    }


def bottleneck10() -> dict:
    # Agent k sits at site k mod 5; sites hang off a slow backbone ring, so
    # overlay links between different sites share the backbone bottlenecks.
    agents = [f"a{k}" for k in range(10)]
    sites = [f"s{k}" for k in range(5)]
    links = [{"a": a, "b": sites[k % 5], "capacity": 10} for k, a in enumerate(agents)]
    links += [{"a": sites[k], "b": sites[(k + 1) % 5], "capacity": 1} for k in range(5)]
    return {"nodes": agents + sites, "links": links, "agents": agents}


def main() -> None:
    p = argparse.ArgumentParser()
    p.add_argument("kind", choices=["roofnet_like", "bottleneck10"])
    p.add_argument("--seed", type=int, default=7)
    args = p.parse_args()
    doc = roofnet_like(args.seed) if args.kind == "roofnet_like" else bottleneck10()
    print(json.dumps(doc, indent=2))


if __name__ == "__main__":
    main()
