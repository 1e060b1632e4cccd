"""Dynamic programming over a rooted decomposition tree.

State at a tree node w with cut (A_w, rest): the pair (inner class, outer class),
where the inner class is the d-neighbourhood class of the partial solution
inside A_w and the outer class summarises what the rest of the solution will
contribute. LCVP problems use q-tuples of classes, one per partition class.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import _kernels
from ._config import CLASS_CAP, BudgetExceeded, budget
from .decomposition import DecompositionTree, validate
from .equivalence import EquivClassTable, enumerate_classes
from .graph import Graph, graph_power
from .problems import ConstraintMatrix, Problem, contains, member_table

LCVP_OBJECTIVES = ("exists", "min-class-1", "max-class-1")


@dataclass
class RootedNode:
    id: int
    children: tuple[int, ...] = ()
    vertex: Optional[int] = None
    side: tuple[int, ...] = ()


@dataclass
class RootedTree:
    nodes: list[RootedNode]
    root: int

    def postorder(self) -> list[int]:
        out, stack = [], [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for c in reversed(self.nodes[x].children):
                stack.append((c, False))
        return out

    def leaves(self) -> list[int]:
        return [nd.id for nd in self.nodes if nd.vertex is not None]


def root_decomposition(dec: DecompositionTree) -> RootedTree:
    """Subdivide the smallest tree edge with a new root; contract unary nodes."""
    if not dec.edges:
        raise ValueError("cannot root a decomposition without edges")
    a, b = dec.edges[0]
    children: dict[int, list[int]] = {}
    root = dec.num_nodes
    children[root] = [a, b]
    stack = [(a, b), (b, a)]
    while stack:
        x, came_from = stack.pop()
        kids = [y for y in dec.tree_adj[x] if y != came_from]
        children[x] = kids
        stack.extend((y, x) for y in kids)

    def resolve(x):
        while len(children[x]) == 1:
            x = children[x][0]
        return x

    nodes: dict[int, RootedNode] = {}
    order = [root]
    while order:
        x = order.pop()
        kids = tuple(resolve(y) for y in children[x])
        nodes[x] = RootedNode(x, kids, dec.vertex_of.get(x) if not kids else None)
        order.extend(kids)
    # dense renumbering in preorder, root first
    ids = {}
    stack = [root]
    while stack:
        x = stack.pop()
        ids[x] = len(ids)
        stack.extend(reversed(nodes[x].children))
    dense = [None] * len(ids)
    for x, nd in nodes.items():
        dense[ids[x]] = RootedNode(ids[x], tuple(ids[c] for c in nd.children), nd.vertex)
    tree = RootedTree(dense, 0)
    for x in tree.postorder():
        nd = tree.nodes[x]
        if nd.children:
            nd.side = tuple(sorted(v for c in nd.children for v in tree.nodes[c].side))
        else:
            nd.side = (nd.vertex,)
    return tree


@dataclass
class NodePlan:
    inner: EquivClassTable
    outer: EquivClassTable
    children: tuple[int, ...] = ()
    vertex: Optional[int] = None
    inner_lookup: Optional[np.ndarray] = None   # (left inner, right inner) -> inner
    out_left: Optional[np.ndarray] = None       # (right inner, outer) -> left child's outer
    out_right: Optional[np.ndarray] = None      # (left inner, outer) -> right child's outer
    leaf_class: int = 0                         # inner class of {vertex} at a leaf


@dataclass
class DPPlan:
    """Problem-independent state space for one (graph, decomposition, d)."""

    graph: Graph
    d: int
    tree: RootedTree
    nodes: list[NodePlan]
    order: list[int]
    build_seconds: float = 0.0
    _spaces: dict = field(default_factory=dict, repr=False)

    def class_counts(self) -> list[tuple[tuple[int, ...], int, int]]:
        return [(self.tree.nodes[x].side, len(self.nodes[x].inner), len(self.nodes[x].outer))
                for x in self.order]


def _capped_sum(x: np.ndarray, y: np.ndarray, d: int) -> np.ndarray:
    return np.minimum(x.astype(np.int16) + y.astype(np.int16), d).astype(np.uint8)


def build_plan(g: Graph, dec: DecompositionTree, d: int, cap: Optional[int] = None,
               threads: int = 1) -> DPPlan:
    """Class tables for every node; they are independent, so ``threads`` may build them in parallel."""
    validate(dec, g)
    if g.n < 2:
        raise ValueError("plans need at least two vertices")
    t0 = time.perf_counter()
    d = max(d, 0)
    tree = root_decomposition(dec)
    order = tree.postorder()

    def tables(x):
        nd = tree.nodes[x]
        inside = set(nd.side)
        outside = tuple(v for v in range(g.n) if v not in inside)
        return NodePlan(enumerate_classes(g, nd.side, d, cap), enumerate_classes(g, outside, d, cap),
                        nd.children, nd.vertex)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            built = dict(zip(order, pool.map(tables, order)))
    else:
        built = {x: tables(x) for x in order}
    plans = [built[x] for x in range(len(tree.nodes))]
    for x in order:
        p = plans[x]
        if not p.children:
            p.leaf_class = p.inner.class_of([p.vertex])
            continue
        a, b = (plans[c] for c in p.children)
        ca, cb, co = a.inner.counts, b.inner.counts, p.outer.counts
        out_w = list(p.inner.outside)
        p.inner_lookup = p.inner.lookup(_capped_sum(ca[:, None, out_w], cb[None, :, out_w], d))
        side_a, side_b = list(a.outer.outside), list(b.outer.outside)
        p.out_left = a.outer.lookup(_capped_sum(cb[:, None, side_a], co[None, :, side_a], d))
        p.out_right = b.outer.lookup(_capped_sum(ca[:, None, side_b], co[None, :, side_b], d))
    return DPPlan(g, d, tree, plans, order, time.perf_counter() - t0)


# --------------------------------------------------------------------------
# generic engine over (possibly tuple-lifted) state spaces
# --------------------------------------------------------------------------

@dataclass
class _Space:
    n_in: int
    n_out: int
    inner: Optional[np.ndarray] = None
    out_left: Optional[np.ndarray] = None
    out_right: Optional[np.ndarray] = None


def _digits(count: int, base: int, q: int) -> np.ndarray:
    idx = np.arange(count, dtype=np.int64)
    return np.stack([(idx // base ** j) % base for j in range(q)], axis=1)


def _lift(table: np.ndarray, bx: int, by: int, bz: int, q: int) -> np.ndarray:
    dx, dy = _digits(bx ** q, bx, q), _digits(by ** q, by, q)
    out = np.zeros((bx ** q, by ** q), np.int64)
    for j in range(q):
        out += table[dx[:, j][:, None], dy[:, j][None, :]] * bz ** j
    return out


def _spaces(plan: DPPlan, q: int, cap: int) -> list[_Space]:
    if q not in plan._spaces:
        plan._spaces[q] = _make_spaces(plan, q, cap)
    return plan._spaces[q]


def _make_spaces(plan: DPPlan, q: int, cap: int) -> list[_Space]:
    spaces = []
    for p in plan.nodes:
        n_in, n_out = len(p.inner) ** q, len(p.outer) ** q
        if max(n_in, n_out) > cap:
            raise BudgetExceeded(f"state space of {max(n_in, n_out)} tuples exceeds cap {cap}")
        spaces.append(_Space(n_in, n_out))
    for p, sp in zip(plan.nodes, spaces):
        if not p.children:
            continue
        a, b = (plan.nodes[c] for c in p.children)
        if q == 1:
            sp.inner, sp.out_left, sp.out_right = p.inner_lookup, p.out_left, p.out_right
        else:
            sp.inner = _lift(p.inner_lookup, len(a.inner), len(b.inner), len(p.inner), q)
            sp.out_left = _lift(p.out_left, len(b.inner), len(p.outer), len(a.outer), q)
            sp.out_right = _lift(p.out_right, len(a.inner), len(p.outer), len(b.outer), q)
    return spaces


def _run(plan: DPPlan, spaces: list[_Space], leaf_options, maximize: bool):
    """Bottom-up tables; ``leaf_options(x)`` yields (inner state, value, ok-vector) per choice."""
    tables = {}
    for x in plan.order:
        p, sp = plan.nodes[x], spaces[x]
        if not p.children:
            val = np.zeros((sp.n_in, sp.n_out), np.int64)
            ok = np.zeros((sp.n_in, sp.n_out), np.bool_)
            pick = np.full((sp.n_in, sp.n_out), -1, np.int64)
            for k, (state, value, feas) in enumerate(leaf_options(x)):
                cur_ok, cur_val = ok[state], val[state]
                better = feas & (~cur_ok | ((value > cur_val) if maximize else (value < cur_val)))
                ok[state] |= better
                val[state] = np.where(better, value, cur_val)
                pick[state] = np.where(better, k, pick[state])
            tables[x] = (val, ok, pick, None)
        else:
            a, b = p.children
            va, oa = tables[a][:2]
            vb, ob = tables[b][:2]
            val, ok, back_a, back_b = _kernels.combine_tables(
                va, oa, vb, ob, sp.inner, sp.out_left, sp.out_right, sp.n_in, maximize)
            tables[x] = (val, ok, back_a, back_b)
    return tables


def _reconstruct(plan: DPPlan, spaces, tables) -> dict[int, int]:
    """Leaf choice index per graph vertex for the root entry (0, 0)."""
    choice = {}
    stack = [(plan.tree.root, 0, 0)]
    while stack:
        x, s_in, s_out = stack.pop()
        p, sp = plan.nodes[x], spaces[x]
        if not p.children:
            choice[p.vertex] = int(tables[x][2][s_in, s_out])
            continue
        ra = int(tables[x][2][s_in, s_out])
        rb = int(tables[x][3][s_in, s_out])
        a, b = p.children
        stack.append((a, ra, int(sp.out_left[rb, s_out])))
        stack.append((b, rb, int(sp.out_right[ra, s_out])))
    return choice


def _root_state(plan: DPPlan, spaces, tables):
    val, ok = tables[plan.tree.root][:2]
    return bool(ok[0, 0]), int(val[0, 0])


# --------------------------------------------------------------------------
# public solvers
# --------------------------------------------------------------------------

@dataclass
class Solution:
    feasible: bool
    value: Optional[int] = None
    witness: Union[frozenset, tuple, None] = None
    stats: dict = field(default_factory=dict)


def _plan_stats(plan: DPPlan, spaces, started: float) -> dict:
    return {
        "backend": _kernels.backend(),
        "d": plan.d,
        "classes": plan.class_counts(),
        "table_cells": sum(s.n_in * s.n_out for s in spaces),
        "seconds": time.perf_counter() - started,
    }


def _sigma_rho_leaf_options(plan: DPPlan, sigma_ok, rho_ok):
    def options(x):
        p = plan.nodes[x]
        v = p.vertex
        seen = p.outer.counts[:, v].astype(np.int64)
        in_v = p.leaf_class
        return [(0, 0, rho_ok[seen]), (in_v, 1, sigma_ok[seen])]
    return options


def _tiny_sigma_rho(g: Graph, prob: Problem) -> Solution:
    # a single vertex has no neighbours
    cands = [(frozenset(), contains(prob.rho, 0)), (frozenset({0}), contains(prob.sigma, 0))] if g.n else [(frozenset(), True)]
    feas = [S for S, good in cands if good]
    if not feas:
        return Solution(False, stats={"classes": []})
    pick = max(feas, key=len) if prob.objective == "max" else min(feas, key=len)
    return Solution(True, len(pick), pick, {"classes": []})


def solve_sigma_rho(g: Graph, dec: DecompositionTree, prob: Problem,
                    plan: Optional[DPPlan] = None) -> Solution:
    started = time.perf_counter()
    validate(dec, g)
    if g.n < 2:
        return _tiny_sigma_rho(g, prob)
    if plan is None:
        plan = build_plan(g, dec, prob.d)
    elif plan.d < prob.d or plan.graph is not g:
        raise ValueError("plan was built for another graph or a smaller d")
    spaces = _spaces(plan, 1, budget(CLASS_CAP))
    sigma_ok = np.array(member_table(prob.sigma, plan.d), dtype=np.bool_)
    rho_ok = np.array(member_table(prob.rho, plan.d), dtype=np.bool_)
    tables = _run(plan, spaces, _sigma_rho_leaf_options(plan, sigma_ok, rho_ok), prob.objective == "max")
    feasible, value = _root_state(plan, spaces, tables)
    stats = _plan_stats(plan, spaces, started)
    if not feasible:
        return Solution(False, stats=stats)
    choice = _reconstruct(plan, spaces, tables)
    witness = frozenset(v for v, k in choice.items() if k == 1)
    if len(witness) != value or not verify_witness(g, prob, 1, witness):
        raise RuntimeError("internal error: DP witness failed verification")
    return Solution(True, value, witness, stats)


def solve_distance_r(g: Graph, dec: DecompositionTree, prob: Problem, r: int,
                     plan: Optional[DPPlan] = None) -> Solution:
    """Solve the distance-r problem as the ordinary problem on G^r, same tree."""
    return solve_sigma_rho(graph_power(g, r), dec, prob, plan)


def _lcvp_leaf_options(plan: DPPlan, mat: ConstraintMatrix, mem: np.ndarray, q: int):
    def options(x):
        p = plan.nodes[x]
        v = p.vertex
        n_in, n_out = len(p.inner), len(p.outer)
        in_v = p.leaf_class
        seen = p.outer.counts[:, v].astype(np.int64)[_digits(n_out ** q, n_out, q)]  # (states, q)
        out = []
        for i in range(q):
            feas = np.ones(n_out ** q, np.bool_)
            for j in range(q):
                feas &= mem[i, j][seen[:, j]]
            out.append((in_v * n_in ** i, 1 if i == 0 else 0, feas))
        return out
    return options


def _tiny_lcvp(mat: ConstraintMatrix, n: int, objective: str) -> Solution:
    if n == 0:
        return Solution(True, 0, (), {"classes": []})
    feas = [i for i in range(mat.q) if all(contains(mat.entries[i][j], 0) for j in range(mat.q))]
    if not feas:
        return Solution(False, stats={"classes": []})
    i = 0 if (objective == "max-class-1" and 0 in feas) else (min(f for f in feas if f != 0) if objective == "min-class-1" and any(f != 0 for f in feas) else feas[0])
    parts = tuple(frozenset({0}) if j == i else frozenset() for j in range(mat.q))
    return Solution(True, 1 if i == 0 else 0, parts, {"classes": []})


def solve_lcvp(g: Graph, dec: DecompositionTree, mat: ConstraintMatrix,
               objective: str = "exists", plan: Optional[DPPlan] = None) -> Solution:
    """D-partition search on G^r; values count the vertices in the first class."""
    if objective not in LCVP_OBJECTIVES:
        raise ValueError(f"objective must be one of {LCVP_OBJECTIVES}")
    started = time.perf_counter()
    h = graph_power(g, mat.r)
    validate(dec, h)
    if h.n < 2:
        return _tiny_lcvp(mat, h.n, objective)
    q = mat.q
    if plan is None:
        plan = build_plan(h, dec, mat.d)
    elif plan.d < mat.d or plan.graph != h:
        raise ValueError("plan was built for another graph or a smaller d")
    spaces = _spaces(plan, q, budget(CLASS_CAP))
    mem = np.array([[member_table(mat.entries[i][j], plan.d) for j in range(q)] for i in range(q)], dtype=np.bool_)
    tables = _run(plan, spaces, _lcvp_leaf_options(plan, mat, mem, q), objective == "max-class-1")
    feasible, value = _root_state(plan, spaces, tables)
    stats = _plan_stats(plan, spaces, started)
    if not feasible:
        return Solution(False, stats=stats)
    choice = _reconstruct(plan, spaces, tables)
    parts = tuple(frozenset(v for v, k in choice.items() if k == i) for i in range(q))
    if len(parts[0]) != value or not verify_witness(g, mat, mat.r, parts):
        raise RuntimeError("internal error: DP partition failed verification")
    return Solution(True, value, parts, stats)


def verify_witness(g: Graph, spec: Union[Problem, ConstraintMatrix], r: int, witness) -> bool:
    """Check a set (or a partition / label tuple) directly, with exact counts on G^r."""
    h = graph_power(g, r)
    if isinstance(spec, Problem):
        S = set(witness)
        if not S <= set(range(h.n)):
            return False
        for v in range(h.n):
            c = sum(1 for u in h.neighbors[v] if u in S)
            if not contains(spec.sigma if v in S else spec.rho, c):
                return False
        return True
    q = spec.q
    witness = tuple(witness)
    if len(witness) == h.n and all(isinstance(x, (int, np.integer)) for x in witness):
        labels = [int(x) for x in witness]
    else:
        if len(witness) != q:
            return False
        labels = [-1] * h.n
        for i, part in enumerate(witness):
            for v in part:
                if not 0 <= v < h.n or labels[v] != -1:
                    return False
                labels[v] = i
    if any(not 0 <= x < q for x in labels):
        return False
    for v in range(h.n):
        counts = [0] * q
        for u in h.neighbors[v]:
            counts[labels[u]] += 1
        if not all(contains(spec.entries[labels[v]][j], counts[j]) for j in range(q)):
            return False
    return True
