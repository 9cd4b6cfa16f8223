"""Exact BFS (hop-distance) trees over the spanner.

The transmission graph itself is never materialized: layer by layer, a
disk-containment structure over the current layer W_i decides whether a
candidate reached along spanner edges is a true BFS successor. Correct
for spanners with stretch at most 2.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .geom_query import DiskContainment


@dataclass
class BfsResult:
    """Hop distances, predecessor tree and layers of one BFS run."""

    dist: list
    parent: list
    layers: list
    relax_counts: dict = field(default_factory=dict)

    def max_edge_relaxations(self):
        return max(self.relax_counts.values(), default=0)


def bfs_tree(sites, H, root):
    """BFS tree of the transmission graph rooted at `root`, using only H.

    Per layer i, a disk-containment structure over W_i answers whether a
    site q reached along an H-edge lies in some disk of layer i; if so,
    that disk's site becomes q's parent and q joins W_{i+1}. Newly
    admitted sites keep propagating within the same iteration, so every
    H-edge is relaxed at most twice over the whole run.
    """
    n = len(sites)
    if not 0 <= root < n:
        raise IndexError(f"root {root} out of range for {n} sites")
    if H.t > 2.0 + 1e-12:
        raise ValueError(f"BFS needs a spanner with stretch <= 2, got t={H.t}")
    dist = [math.inf] * n
    parent = [None] * n
    dist[root] = 0
    layers = [[root]]
    relax = {}
    level = 0
    while layers[-1]:
        W = layers[-1]
        pd = DiskContainment([sites[i] for i in W])
        next_W = []
        queue = deque(W)
        while queue:
            p = queue.popleft()
            for q, _ in H.out_edges(p):
                relax[(p, q)] = relax.get((p, q), 0) + 1
                if dist[q] != math.inf:
                    continue
                u = pd.query(sites[q].x, sites[q].y)
                if u is None:
                    continue
                dist[q] = level + 1
                parent[q] = u.id
                next_W.append(q)
                queue.append(q)
        layers.append(next_W)
        level += 1
    layers.pop()
    return BfsResult(dist, parent, layers, relax)
