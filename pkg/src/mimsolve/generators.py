"""Instance generators: small graph families, random interval graphs and the
hardness gadgets built from multicolored clique / independent set sources.

Gadget vertices carry role strings (1-indexed, matching the usual notation):
``z[i,s]``, ``r[i,j,s,t]``, ``b1[i,h]`` / ``b2[i,h]`` and ``b1[i,j,h]`` /
``b2[i,j,h]`` for the clique gadget, ``b[i]``, ``c[i]``, ``c1[i,h]``,
``c2[i,h]`` and ``s[i]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

from .decomposition import interval_graph
from .graph import Graph
from .oracle import multicolored_clique_exists, multicolored_is_exists
from .problems import NATURALS, POSITIVE, Problem, SetSpec

CONSTRUCTIONS = ("clique-gadget", "domset-gadget", "total-dom-gadget", "d-dom-gadget")


# --------------------------------------------------------------------------
# small families
# --------------------------------------------------------------------------

def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, list(itertools.combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    return Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def gen_random_interval(n: int, seed: int) -> tuple[Graph, list[tuple[int, int]]]:
    """n intervals whose 2n endpoints are a random permutation of 1..2n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    pts = (rng.permutation(2 * n) + 1).reshape(n, 2)
    intervals = [(int(min(a, b)), int(max(a, b))) for a, b in pts]
    return interval_graph(intervals), intervals


# --------------------------------------------------------------------------
# partitioned sources
# --------------------------------------------------------------------------

@dataclass
class PartitionedGraph:
    graph: Graph
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        self.parts = tuple(tuple(sorted(p)) for p in self.parts)
        flat = [v for p in self.parts for v in p]
        if sorted(flat) != list(range(self.graph.n)):
            raise ValueError("parts must partition the vertex set")

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def p(self) -> int:
        return max((len(x) for x in self.parts), default=0)


def pad_partition(pg: PartitionedGraph, mode: str) -> PartitionedGraph:
    """Bring every class up to the largest class size.

    ``clique`` mode adds isolated vertices; ``is`` mode adds vertices adjacent
    to everything outside their own class. Neither changes the multicolored
    answer.
    """
    if mode not in ("clique", "is"):
        raise ValueError("mode must be 'clique' or 'is'")
    p = pg.p
    n = pg.graph.n
    parts = [list(x) for x in pg.parts]
    new = []
    for i, part in enumerate(parts):
        for _ in range(p - len(part)):
            part.append(n)
            new.append((n, i))
            n += 1
    if not new:
        return pg
    edges = list(pg.graph.edges)
    if mode == "is":
        owner = {v: i for i, part in enumerate(parts) for v in part}
        for v, i in new:
            edges.extend((u, v) for u in range(n) if u != v and owner[u] != i)
    return PartitionedGraph(Graph(n, edges), tuple(tuple(x) for x in parts))


@dataclass
class GadgetInstance:
    graph: Graph
    construction: str
    params: dict
    target: int
    roles: list[str]
    expected: Optional[bool] = None
    groups: dict = field(default_factory=dict, repr=False)

    def vertices(self, prefix: str) -> list[int]:
        """Vertices whose role starts with ``prefix`` followed by '['."""
        return [v for v, r in enumerate(self.roles) if r.startswith(prefix + "[")]

    def query(self) -> Problem:
        """The (sigma, rho) problem whose size-``target`` solutions certify the source."""
        d = self.params.get("d", 1)
        if self.construction == "clique-gadget":
            return Problem(SetSpec.finite(d), SetSpec.at_least(d + 1), "max", "clique-gadget-query")
        if self.construction == "domset-gadget":
            return Problem(NATURALS, POSITIVE, "min", "domset-gadget-query")
        if self.construction == "total-dom-gadget":
            return Problem(POSITIVE, POSITIVE, "min", "total-dom-gadget-query")
        return Problem(NATURALS, SetSpec.at_least(d), "min", "d-dom-gadget-query")


class _Builder:
    def __init__(self):
        self.roles: list[str] = []
        self.edges: list[tuple[int, int]] = []

    def add(self, role: str) -> int:
        self.roles.append(role)
        return len(self.roles) - 1

    def join(self, us, vs):
        self.edges.extend((u, v) for u in us for v in vs if u != v)

    def clique(self, vs):
        self.edges.extend(itertools.combinations(vs, 2))

    def graph(self) -> Graph:
        return Graph(len(self.roles), self.edges)


def _core(pg: PartitionedGraph) -> tuple[_Builder, list[list[int]], dict]:
    k, p = pg.k, pg.p
    if any(len(x) != p for x in pg.parts):
        raise ValueError("classes must be padded to equal size first")
    bld = _Builder()
    Z = [[bld.add(f"z[{i + 1},{s + 1}]") for s in range(p)] for i in range(k)]
    R = {}
    for i, j in itertools.combinations(range(k), 2):
        members = []
        for s, u in enumerate(pg.parts[i]):
            for t, w in enumerate(pg.parts[j]):
                if pg.graph.has_edge(u, w):
                    members.append((bld.add(f"r[{i + 1},{j + 1},{s + 1},{t + 1}]"), s, t))
        R[i, j] = members
    for zs in Z:
        bld.clique(zs)
    for (i, j), members in R.items():
        bld.clique([x for x, _, _ in members])
        for x, s, t in members:
            bld.join([x], [Z[i][h] for h in range(p) if h != s])
            bld.join([x], [Z[j][h] for h in range(p) if h != t])
    return bld, Z, R


def gen_core(pg: PartitionedGraph) -> tuple[Graph, list[str]]:
    bld, _, _ = _core(pg)
    return bld.graph(), bld.roles


def _check_k(pg: PartitionedGraph, least: int):
    if pg.k < least:
        raise ValueError(f"construction needs k >= {least}, got {pg.k}")


def gen_clique_gadget(pg: PartitionedGraph, d: int, expected: Optional[bool] = None) -> GadgetInstance:
    """Core graph plus a K_{d,d-1} gadget hanging off each Z(i) and each R(i,j)."""
    _check_k(pg, 3)
    if d < 1:
        raise ValueError("d must be at least 1")
    pg = pad_partition(pg, "clique")
    bld, Z, R = _core(pg)
    groups = {f"Z{i + 1}": zs for i, zs in enumerate(Z)}
    targets = [(f"{i + 1}", zs) for i, zs in enumerate(Z)]
    targets += [(f"{i + 1},{j + 1}", [x for x, _, _ in m]) for (i, j), m in R.items()]
    B = []
    for tag, anchor in targets:
        b1 = [bld.add(f"b1[{tag},{h + 1}]") for h in range(d)]
        b2 = [bld.add(f"b2[{tag},{h + 1}]") for h in range(d - 1)]
        bld.join(b1, b2)
        bld.join(b1, anchor)
        B += b1 + b2
    groups["B"] = B
    kk = pg.k + comb(pg.k, 2)
    return GadgetInstance(bld.graph(), "clique-gadget", {"k": pg.k, "p": pg.p, "d": d},
                          2 * d * kk, bld.roles, expected, groups)


def _domset_base(pg: PartitionedGraph):
    _check_k(pg, 2)
    pg = pad_partition(pg, "is")
    bld, Z, R = _core(pg)
    return pg, bld, Z, R


def gen_domset_gadget(pg: PartitionedGraph, expected: Optional[bool] = None) -> GadgetInstance:
    pg, bld, Z, _ = _domset_base(pg)
    for i, zs in enumerate(Z):
        bld.join([bld.add(f"b[{i + 1}]")], zs)
    return GadgetInstance(bld.graph(), "domset-gadget", {"k": pg.k, "p": pg.p},
                          pg.k, bld.roles, expected)


def gen_total_dom_gadget(pg: PartitionedGraph, expected: Optional[bool] = None) -> GadgetInstance:
    pg, bld, Z, _ = _domset_base(pg)
    for i, zs in enumerate(Z):
        b = bld.add(f"b[{i + 1}]")
        bld.join([b], zs)
        bld.join([bld.add(f"c[{i + 1}]")], [b])
    return GadgetInstance(bld.graph(), "total-dom-gadget", {"k": pg.k, "p": pg.p},
                          2 * pg.k, bld.roles, expected)


def gen_d_dom_gadget(pg: PartitionedGraph, d: int, expected: Optional[bool] = None) -> GadgetInstance:
    """Core graph plus, per class, K_{d,d} on C1/C2 and a satellite vertex."""
    if d < 2:
        raise ValueError("d must be at least 2")
    pg, bld, Z, R = _domset_base(pg)
    for i, zs in enumerate(Z):
        c1 = [bld.add(f"c1[{i + 1},{h + 1}]") for h in range(d)]
        c2 = [bld.add(f"c2[{i + 1},{h + 1}]") for h in range(d)]
        bld.join(c1, c2)
        later = [x for (a, _), m in R.items() if a == i for x, _, _ in m]
        bld.join(c1[:d - 1], zs + later)
        # the satellite skips c1[i,d], like the other extra attachments
        bld.join([bld.add(f"s[{i + 1}]")], zs + c1[:d - 1])
    return GadgetInstance(bld.graph(), "d-dom-gadget", {"k": pg.k, "p": pg.p, "d": d},
                          pg.k * (d + 1), bld.roles, expected)


def source_answer(pg: PartitionedGraph, construction: str) -> bool:
    """Brute-force multicolored clique / independent set answer on the source."""
    if construction == "clique-gadget":
        return multicolored_clique_exists(pg.graph, pg.parts)
    return multicolored_is_exists(pg.graph, pg.parts)


def generate(construction: str, pg: PartitionedGraph, d: int = 1, certify: bool = True) -> GadgetInstance:
    expected = source_answer(pg, construction) if certify else None
    if construction == "clique-gadget":
        return gen_clique_gadget(pg, d, expected)
    if construction == "domset-gadget":
        return gen_domset_gadget(pg, expected)
    if construction == "total-dom-gadget":
        return gen_total_dom_gadget(pg, expected)
    if construction == "d-dom-gadget":
        return gen_d_dom_gadget(pg, d, expected)
    raise ValueError(f"unknown construction {construction!r}; choose from {', '.join(CONSTRUCTIONS)}")


def random_source(k: int, p: int, density: float, rng: np.random.Generator,
                  sizes: Optional[Sequence[int]] = None) -> PartitionedGraph:
    """Random k-partite source; edges only run between different classes."""
    sizes = list(sizes) if sizes is not None else [p] * k
    parts, v = [], 0
    for s in sizes:
        parts.append(tuple(range(v, v + s)))
        v += s
    owner = {x: i for i, part in enumerate(parts) for x in part}
    edges = [(a, b) for a, b in itertools.combinations(range(v), 2)
             if owner[a] != owner[b] and rng.random() < density]
    return PartitionedGraph(Graph(v, edges), tuple(parts))


def write_metadata(inst: GadgetInstance) -> str:
    lines = [f"construction {inst.construction}", f"target {inst.target}",
             "expected " + ("unknown" if inst.expected is None else ("yes" if inst.expected else "no"))]
    lines += [f"role {v + 1} {r}" for v, r in enumerate(inst.roles)]
    return "\n".join(lines) + "\n"
