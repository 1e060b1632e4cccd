"""Decomposition trees, their cuts and exact maximum-induced-matching widths."""
from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from ._config import CUTMIM_NODE_BUDGET, BudgetExceeded, budget
from .graph import Graph


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class DecompositionTree:
    """Subcubic tree on nodes ``0..num_nodes-1``; ``leaf_of[v]`` is the leaf of graph vertex v."""

    num_nodes: int
    edges: tuple[tuple[int, int], ...]
    leaf_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted((min(a, b), max(a, b)) for a, b in self.edges)))
        object.__setattr__(self, "leaf_of", tuple(self.leaf_of))

    @cached_property
    def tree_adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def vertex_of(self) -> dict[int, int]:
        return {node: v for v, node in enumerate(self.leaf_of)}

    @property
    def n(self) -> int:
        return len(self.leaf_of)

    def is_caterpillar(self) -> bool:
        spine = [x for x in range(self.num_nodes) if len(self.tree_adj[x]) > 1]
        return all(sum(1 for y in self.tree_adj[x] if len(self.tree_adj[y]) > 1) <= 2 for x in spine)


def validate(dec: DecompositionTree, g: Graph) -> None:
    """Raise ``DecompositionError`` unless ``dec`` is a decomposition tree of ``g``."""
    N = dec.num_nodes
    if N < 1:
        raise DecompositionError("tree has no nodes")
    seen_edges = set()
    for a, b in dec.edges:
        if not (0 <= a < N and 0 <= b < N):
            raise DecompositionError(f"tree edge ({a}, {b}) references an unknown node")
        if a == b:
            raise DecompositionError(f"tree self-loop at node {a}")
        if (a, b) in seen_edges:
            raise DecompositionError(f"duplicate tree edge ({a}, {b})")
        seen_edges.add((a, b))
    if len(dec.edges) != N - 1:
        raise DecompositionError("tree must have exactly num_nodes - 1 edges (cyclic or disconnected)")
    if len(_component(dec, 0, None)) != N:
        raise DecompositionError("tree is disconnected")
    for x, nb in enumerate(dec.tree_adj):
        if len(nb) > 3:
            raise DecompositionError(f"node {x} has degree {len(nb)}: tree is not subcubic")
    if len(dec.leaf_of) != g.n:
        raise DecompositionError(f"leaf map covers {len(dec.leaf_of)} vertices, graph has {g.n}")
    if len(set(dec.leaf_of)) != len(dec.leaf_of):
        raise DecompositionError("leaf map is not a bijection: a leaf is assigned twice")
    leaves = {x for x in range(N) if len(dec.tree_adj[x]) <= 1}
    for v, node in enumerate(dec.leaf_of):
        if not 0 <= node < N:
            raise DecompositionError(f"vertex {v} mapped to unknown node {node}")
        if node not in leaves:
            raise DecompositionError(f"vertex {v} mapped to internal node {node}")
    if leaves != set(dec.leaf_of):
        raise DecompositionError("leaf map is not a bijection: unmapped leaves")


def _component(dec: DecompositionTree, start: int, banned: Optional[tuple[int, int]]) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in dec.tree_adj[x]:
            if banned is not None and {x, y} == set(banned):
                continue
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def cut_of_edge(dec: DecompositionTree, e: tuple[int, int]) -> tuple[frozenset, frozenset]:
    """Vertex bipartition of tree edge ``e = (a, b)``; the first part lies on a's side."""
    a, b = e
    if (min(a, b), max(a, b)) not in set(dec.edges):
        raise DecompositionError(f"({a}, {b}) is not a tree edge")
    side = _component(dec, a, (a, b))
    A = frozenset(dec.vertex_of[x] for x in side if x in dec.vertex_of)
    return A, frozenset(range(dec.n)) - A


def canonical_cut(dec: DecompositionTree, e: tuple[int, int]) -> tuple[frozenset, frozenset]:
    """Cut of ``e`` oriented so the first part contains node 0's side."""
    a, b = min(e), max(e)
    side = _component(dec, a, (a, b))
    return cut_of_edge(dec, (a, b) if 0 in side else (b, a))


def _crossing(g: Graph, A) -> list[tuple[int, int]]:
    inside = set(A)
    return [(u, v) for u in sorted(inside) for v in g.neighbors[u] if v not in inside]


def _lowbit_index(x: int) -> int:
    return (x & -x).bit_length() - 1


def _clique_cover(cand: int, conflict: Sequence[int]) -> int:
    # greedy partition of the candidates into conflict cliques: an upper bound
    count = 0
    while cand:
        i = _lowbit_index(cand)
        pool = cand & conflict[i]
        cand &= ~(1 << i)
        while pool:
            j = _lowbit_index(pool)
            cand &= ~(1 << j)
            pool &= conflict[j]
        count += 1
    return count


def cut_mim(g: Graph, A: Iterable[int], node_budget: Optional[int] = None) -> int:
    """Maximum induced matching of the bipartite graph of edges crossing (A, V - A).

    Branch and bound over crossing edges sorted by conflict degree; a greedy
    matching seeds the incumbent and a greedy clique cover of the conflict
    graph bounds each node. Raises ``BudgetExceeded`` rather than guessing.
    """
    node_budget = budget(CUTMIM_NODE_BUDGET) if node_budget is None else node_budget
    edges = _crossing(g, A)
    m = len(edges)
    if m == 0:
        return 0
    adj = g.adj

    def clash(e, f):
        (a, x), (b, y) = e, f
        return a == b or x == y or adj[a, y] or adj[b, x]

    raw = [[j for j in range(m) if j != i and clash(edges[i], edges[j])] for i in range(m)]
    order = sorted(range(m), key=lambda i: (len(raw[i]), i))
    pos = {old: new for new, old in enumerate(order)}
    conflict = [sum(1 << pos[j] for j in raw[old]) for old in order]

    best = 0
    taken = 0
    for i in range(m):
        if not taken >> i & 1:
            taken |= 1 << i
            best += 1
            taken |= conflict[i]

    nodes = 0
    stack = [((1 << m) - 1, 0)]
    while stack:
        cand, size = stack.pop()
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"cut_mim search exceeded {node_budget} nodes")
        if not cand:
            best = max(best, size)
            continue
        if size + _clique_cover(cand, conflict) <= best:
            continue
        i = _lowbit_index(cand)
        bit = 1 << i
        stack.append((cand & ~bit, size))
        stack.append((cand & ~bit & ~conflict[i], size + 1))
    return best


@dataclass
class CutReport:
    cuts: list[tuple[tuple[int, int], frozenset, int]] = field(default_factory=list)

    @property
    def mimw(self) -> int:
        return max((c for _, _, c in self.cuts), default=0)


def mimw_of_dec(g: Graph, dec: DecompositionTree, threads: int = 1,
                node_budget: Optional[int] = None) -> CutReport:
    validate(dec, g)
    sides = [(e, canonical_cut(dec, e)[0]) for e in dec.edges]
    work = lambda item: cut_mim(g, item[1], node_budget)  # noqa: E731
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(work, sides))
    else:
        values = [work(s) for s in sides]
    return CutReport([(e, A, v) for (e, A), v in zip(sides, values)])


def caterpillar_from_order(order: Sequence[int]) -> DecompositionTree:
    """Caterpillar whose leaves, read along the spine, follow ``order``.

    Leaf ``i`` is tree node ``i``; spine nodes are numbered ``n, n+1, ...``.
    """
    order = list(order)
    n = len(order)
    if sorted(order) != list(range(n)):
        raise DecompositionError("order is not a permutation of the vertices")
    leaf_of = [0] * n
    for i, v in enumerate(order):
        leaf_of[v] = i
    if n <= 1:
        return DecompositionTree(max(n, 1), (), tuple(leaf_of))
    if n == 2:
        return DecompositionTree(2, ((0, 1),), tuple(leaf_of))
    spine = list(range(n, 2 * n - 2))
    edges = [(spine[j], spine[j + 1]) for j in range(len(spine) - 1)]
    edges.append((0, spine[0]))
    for i in range(1, n - 1):
        edges.append((i, spine[i - 1]))
    edges.append((n - 1, spine[-1]))
    return DecompositionTree(2 * n - 2, tuple(edges), tuple(leaf_of))


def interval_graph(intervals: Sequence[tuple[float, float]]) -> Graph:
    n = len(intervals)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if max(intervals[u][0], intervals[v][0]) <= min(intervals[u][1], intervals[v][1])]
    return Graph(n, edges)


def interval_order(intervals: Sequence[tuple[float, float]]) -> list[int]:
    return sorted(range(len(intervals)), key=lambda v: (intervals[v][0], intervals[v][1], v))


def interval_decomposition(g: Graph, intervals: Sequence[tuple[float, float]]) -> DecompositionTree:
    """Caterpillar over the vertices sorted by (left, right, index)."""
    if len(intervals) != g.n:
        raise DecompositionError(f"{len(intervals)} intervals given for {g.n} vertices")
    for v, (lo, hi) in enumerate(intervals):
        if lo > hi:
            raise DecompositionError(f"interval of vertex {v} is empty")
    if interval_graph(intervals) != g:
        raise DecompositionError("interval representation does not match the graph")
    return caterpillar_from_order(interval_order(intervals))


def random_decomposition(n: int, rng: np.random.Generator) -> DecompositionTree:
    """Uniformly grown subcubic tree: repeatedly subdivide a random edge and hang a new leaf."""
    if n <= 1:
        return DecompositionTree(1, (), (0,) * n)
    edges = [(0, 1)]
    leaves = [0, 1]
    nxt = 2
    for _ in range(n - 2):
        a, b = edges.pop(int(rng.integers(len(edges))))
        mid, leaf = nxt, nxt + 1
        nxt += 2
        edges += [(a, mid), (mid, b), (mid, leaf)]
        leaves.append(leaf)
    perm = rng.permutation(n)
    return DecompositionTree(nxt, tuple(edges), tuple(leaves[i] for i in perm))


def optimal_linear_mimw(g: Graph, max_n: int = 9) -> tuple[int, DecompositionTree]:
    """Exact linear mim-width by dynamic programming over vertex prefixes."""
    n = g.n
    if n > max_n:
        raise ValueError(f"exact linear mim-width limited to n <= {max_n}")
    if n <= 1:
        return 0, caterpillar_from_order(list(range(n)))
    full = (1 << n) - 1
    members = lambda s: [v for v in range(n) if s >> v & 1]  # noqa: E731
    cm = {s: cut_mim(g, members(s)) for s in range(1, full)}
    best = {0: 0}
    choice = {}
    for s in sorted(range(1, full + 1), key=lambda x: bin(x).count("1")):
        here = cm.get(s, 0)
        opts = [(max(best[s & ~(1 << v)], here), v) for v in range(n) if s >> v & 1]
        best[s], choice[s] = min(opts)
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    singles = 1 if g.m else 0
    return max(best[full], singles), caterpillar_from_order(order)


def parse_decomposition(text: str) -> DecompositionTree:
    """Read ``dec <N>`` / ``te <a> <b>`` / ``leaf <node> <vertex>`` (all 1-indexed)."""
    num = None
    edges, leaves = [], {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "dec" and len(parts) == 2:
                num = int(parts[1])
            elif parts[0] == "te" and len(parts) == 3:
                edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
            elif parts[0] == "leaf" and len(parts) == 3:
                node, v = int(parts[1]) - 1, int(parts[2]) - 1
                if v in leaves:
                    raise DecompositionError(f"line {lineno}: vertex {v + 1} assigned twice")
                leaves[v] = node
            else:
                raise DecompositionError(f"line {lineno}: unrecognised line {line!r}")
        except ValueError as exc:
            if isinstance(exc, DecompositionError):
                raise
            raise DecompositionError(f"line {lineno}: non-integer field") from None
    if num is None:
        raise DecompositionError("missing 'dec <num_nodes>' header")
    if sorted(leaves) != list(range(len(leaves))):
        raise DecompositionError("leaf assignments must cover vertices 1..n")
    return DecompositionTree(num, tuple(edges), tuple(leaves[v] for v in range(len(leaves))))


def write_decomposition(dec: DecompositionTree) -> str:
    lines = [f"dec {dec.num_nodes}"]
    lines.extend(f"te {a + 1} {b + 1}" for a, b in dec.edges)
    lines.extend(f"leaf {node + 1} {v + 1}" for v, node in enumerate(dec.leaf_of))
    return "\n".join(lines) + "\n"


def parse_intervals(text: str) -> list[tuple[float, float]]:
    """Read ``iv <vertex> <left> <right>`` lines (vertex 1-indexed)."""
    found = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "iv" or len(parts) != 4:
            raise DecompositionError(f"line {lineno}: expected 'iv <vertex> <left> <right>'")
        try:
            v, lo, hi = int(parts[1]) - 1, float(parts[2]), float(parts[3])
        except ValueError:
            raise DecompositionError(f"line {lineno}: malformed number") from None
        if v in found:
            raise DecompositionError(f"line {lineno}: vertex {v + 1} given twice")
        found[v] = (lo, hi)
    if sorted(found) != list(range(len(found))):
        raise DecompositionError("intervals must cover vertices 1..n")
    return [found[v] for v in range(len(found))]


def write_intervals(intervals: Sequence[tuple[float, float]]) -> str:
    fmt = lambda x: str(int(x)) if float(x).is_integer() else repr(float(x))  # noqa: E731
    return "".join(f"iv {v + 1} {fmt(lo)} {fmt(hi)}\n" for v, (lo, hi) in enumerate(intervals))
