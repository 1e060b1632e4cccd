"""Simple undirected graphs, BFS distances, graph powers and the edge-list file format.

Vertices are the dense integers ``0..n-1``. The on-disk format is 1-based::

    p edge <n> <m>
    e <u> <v>
"""
from __future__ import annotations

import math
from collections import deque
from typing import Iterable

import numpy as np

UNREACHABLE = -1


class GraphFormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class Graph:
    """Immutable simple graph.

    ``adj`` is a read-only boolean matrix, ``neighbors[v]`` a sorted tuple and
    ``masks[v]`` the neighbourhood of ``v`` as an int bitmask.
    """

    __slots__ = ("n", "edges", "adj", "neighbors", "masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("negative vertex count")
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        self._freeze(adj)

    def _freeze(self, adj: np.ndarray) -> None:
        adj.setflags(write=False)
        self.n = adj.shape[0]
        self.adj = adj
        us, vs = np.nonzero(np.triu(adj, 1))
        self.edges = tuple(zip(us.tolist(), vs.tolist()))
        self.neighbors = tuple(tuple(np.flatnonzero(row).tolist()) for row in adj)
        self.masks = tuple(sum(1 << u for u in nb) for nb in self.neighbors)

    @classmethod
    def from_adjacency(cls, matrix) -> "Graph":
        adj = np.array(matrix, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if adj.diagonal().any():
            raise ValueError("self-loop in adjacency matrix")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency matrix is not symmetric")
        g = cls.__new__(cls)
        g._freeze(adj.copy())
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def subgraph_edges_between(self, a, b) -> list[tuple[int, int]]:
        """Edges with one end in ``a`` and the other in ``b`` (as (a-end, b-end))."""
        bset = set(b)
        return [(u, v) for u in sorted(a) for v in self.neighbors[u] if v in bset]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    _check_vertex(g, source)
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in g.neighbors[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = du
                queue.append(v)
    return dist


def all_pairs_distances(g: Graph) -> np.ndarray:
    """n x n matrix of BFS distances, ``UNREACHABLE`` (-1) between components."""
    out = np.empty((g.n, g.n), dtype=np.int64)
    for s in range(g.n):
        out[s] = bfs_distances(g, s)
    return out


def distance(g: Graph, u: int, v: int):
    """Shortest-path length between u and v, ``math.inf`` if disconnected."""
    _check_vertex(g, v)
    d = int(bfs_distances(g, u)[v])
    return math.inf if d == UNREACHABLE else d


def graph_power(g: Graph, k: int) -> Graph:
    if k < 1:
        raise ValueError("graph power exponent must be >= 1")
    if k == 1:
        return g
    dist = all_pairs_distances(g)
    return Graph.from_adjacency((dist >= 1) & (dist <= k))


def r_neighborhood(g: Graph, u: int, r: int) -> frozenset[int]:
    if r < 1:
        raise ValueError("radius must be >= 1")
    dist = bfs_distances(g, u)
    return frozenset(np.flatnonzero((dist >= 1) & (dist <= r)).tolist())


def parse_graph(text: str) -> Graph:
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(lineno, "duplicate header")
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphFormatError(lineno, "malformed header, expected 'p edge <n> <m>'")
            try:
                n, _ = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(lineno, "malformed header counts") from None
            if n < 0:
                raise GraphFormatError(lineno, "negative vertex count")
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(lineno, "edge line before header")
            if len(parts) != 3:
                raise GraphFormatError(lineno, "malformed edge line")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(lineno, "non-integer vertex") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(lineno, f"vertex index out of range 1..{n}")
            if u == v:
                raise GraphFormatError(lineno, f"self-loop at vertex {u}")
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise GraphFormatError(lineno, f"unknown line type {parts[0]!r}")
    if n is None:
        raise GraphFormatError(0, "missing 'p edge' header")
    return Graph(n, sorted(edges))


def write_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
