"""Exhaustive reference answers.

Nothing here goes through the solver's truncated-count logic: membership is
re-derived from the raw set description and counts are exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .graph import Graph, graph_power
from .problems import ConstraintMatrix, Problem, SetSpec

MAX_SUBSET_N = 22
MAX_LABELINGS = 10**7
MAX_CROSSING_EDGES = 64


class OracleTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    """Answers for all three objectives from one sweep.

    Witnesses are the lowest enumeration codes achieving the optimum. For
    (sigma, rho) a witness is a frozenset; for LCVP a tuple of class labels.
    ``feasible_sizes`` holds every solution size that occurs ((sigma, rho) only).
    """

    feasible: bool
    min_value: Optional[int]
    max_value: Optional[int]
    min_witness: object = None
    max_witness: object = None
    first_witness: object = None
    feasible_sizes: frozenset = frozenset()

    def value(self, objective: str) -> Optional[int]:
        if objective == "min" or objective == "min-class-1":
            return self.min_value
        if objective == "max" or objective == "max-class-1":
            return self.max_value
        return None


def _allowed(mu: SetSpec, count: int) -> bool:
    listed = count in mu.elems
    return not listed if mu.cofinite else listed


def _mask_to_set(code: int) -> frozenset:
    return frozenset(v for v in range(code.bit_length()) if code >> v & 1)


def brute_sigma_rho(g: Graph, prob: Problem, r: int = 1) -> OracleResult:
    """Every subset of V(G^r) checked against sigma / rho with exact counts."""
    if g.n > MAX_SUBSET_N:
        raise OracleTooLarge(f"subset enumeration limited to n <= {MAX_SUBSET_N}")
    h = graph_power(g, r)
    n = h.n
    masks = np.array(h.masks, dtype=np.int64)
    sigma_ok = np.array([_allowed(prob.sigma, c) for c in range(n + 1)], dtype=np.bool_)
    rho_ok = np.array([_allowed(prob.rho, c) for c in range(n + 1)], dtype=np.bool_)
    res, sizes = _kernels.sigma_rho_sweep(masks, sigma_ok, rho_ok, n)
    res = [int(x) for x in res]
    if res[4] < 0:
        return OracleResult(False, None, None)
    return OracleResult(
        True, res[0], res[2],
        _mask_to_set(res[1]), _mask_to_set(res[3]), _mask_to_set(res[4]),
        frozenset(np.flatnonzero(sizes).tolist()),
    )


def _decode_labels(code: int, q: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(code % q)
        code //= q
    return tuple(out)


def brute_lcvp(g: Graph, mat: ConstraintMatrix) -> OracleResult:
    """Every labelling of V(G^r) with classes 0..q-1 (empty classes allowed).

    Values count the vertices labelled 0 (the first class).
    """
    q = mat.q
    h = graph_power(g, mat.r)
    n = h.n
    total = q ** n
    if total > MAX_LABELINGS:
        raise OracleTooLarge(f"q^n = {total} labelings exceeds {MAX_LABELINGS}")
    table = np.array([[[_allowed(mat.entries[i][j], c) for c in range(n + 1)]
                       for j in range(q)] for i in range(q)], dtype=np.bool_)
    ptr = np.zeros(n + 1, np.int64)
    ptr[1:] = np.cumsum([len(nb) for nb in h.neighbors])
    idx = np.array([u for nb in h.neighbors for u in nb], dtype=np.int64)
    res = [int(x) for x in _kernels.lcvp_sweep(idx, ptr, table, q, n, total)]
    if res[4] < 0:
        return OracleResult(False, None, None)
    return OracleResult(
        True, res[0], res[2],
        _decode_labels(res[1], q, n), _decode_labels(res[3], q, n), _decode_labels(res[4], q, n),
    )


def brute_cut_mim(g: Graph, A) -> int:
    """Largest induced matching among crossing edges, by listing all of them.

    Induced matchings are closed under taking subsets, so extending in edge
    index order visits every one exactly once.
    """
    inside = set(A)
    edges = [(u, v) for u in sorted(inside) for v in g.neighbors[u] if v not in inside]
    if len(edges) > MAX_CROSSING_EDGES:
        raise OracleTooLarge(f"{len(edges)} crossing edges exceeds {MAX_CROSSING_EDGES}")
    adj = g.adj

    def fits(chosen, e):
        a, x = e
        for b, y in chosen:
            if a == b or x == y or adj[a, y] or adj[b, x]:
                return False
        return True

    best = 0
    stack = [((), 0)]
    while stack:
        chosen, start = stack.pop()
        best = max(best, len(chosen))
        for i in range(start, len(edges)):
            if fits(chosen, edges[i]):
                stack.append((chosen + (edges[i],), i + 1))
    return best


def multicolored_clique_exists(g: Graph, parts) -> bool:
    """One vertex per part, pairwise adjacent."""
    return any(all(g.adj[u, v] for u, v in itertools.combinations(pick, 2))
               for pick in itertools.product(*parts))


def multicolored_is_exists(g: Graph, parts) -> bool:
    """One vertex per part, pairwise non-adjacent."""
    return any(not any(g.adj[u, v] for u, v in itertools.combinations(pick, 2))
               for pick in itertools.product(*parts))
