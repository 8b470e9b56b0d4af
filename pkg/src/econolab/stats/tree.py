"""Minimum spanning trees on correlation distances.

The tree is grown greedily over edges sorted by weight with a
deterministic tie-break on (min index, max index), so equal-weight
inputs always produce the same tree.  The central vertex is the one
with the highest degree (ties resolved toward the lowest index) and
node levels are counted from it; the mean occupation layer is the
average level.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np


@dataclass
class AssetTree:
    n: int
    edges: List[Tuple[int, int, float]]

    @property
    def weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=int)
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def mst_tree(d) -> AssetTree:
    """Minimum spanning tree of a symmetric distance matrix."""
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError("distance matrix must be square")
    if np.any(np.isnan(d)):
        raise ValueError("distance matrix holds NaN entries")
    n = d.shape[0]
    order = sorted(((d[i, j], i, j) for i in range(n) for j in range(i + 1, n)))
    uf = _UnionFind(n)
    edges: List[Tuple[int, int, float]] = []
    for w, i, j in order:
        if uf.union(i, j):
            edges.append((i, j, float(w)))
            if len(edges) == n - 1:
                break
    return AssetTree(n, edges)


def central_vertex(tree: AssetTree) -> int:
    deg = tree.degrees()
    return int(np.argmax(deg))  # argmax takes the lowest index on ties


def mean_occupation_layer(tree: AssetTree, central: Optional[int] = None) -> tuple:
    """Mean BFS level from the central vertex; returns (l, levels, central)."""
    if central is None:
        central = central_vertex(tree)
    adj = tree.adjacency()
    levels = np.full(tree.n, -1, dtype=int)
    levels[central] = 0
    queue = deque([central])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if levels[v] < 0:
                levels[v] = levels[u] + 1
                queue.append(v)
    if np.any(levels < 0):
        raise ValueError("tree is not connected")
    return float(levels.mean()), levels, central
