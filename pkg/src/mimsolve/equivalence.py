"""d-neighbourhood equivalence classes of the subsets on one side of a cut.

Two subsets X, Y of a side A are equivalent when every vertex outside A sees
the same number of neighbours in X and in Y, counting only up to d.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from ._config import CLASS_CAP, BudgetExceeded, budget
from .graph import Graph


def _as_keys(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows, dtype=np.uint8)
    return rows.view(np.dtype((np.void, rows.shape[1]))).ravel()


def _complement(g: Graph, side) -> tuple[int, ...]:
    inside = set(side)
    return tuple(v for v in range(g.n) if v not in inside)


def neighborhood_vector(g: Graph, A: Iterable[int], S: Iterable[int], d: int) -> np.ndarray:
    """``min(d, |N(v) & S|)`` for every v outside A, ascending."""
    A = frozenset(A)
    S = list(S)
    if not set(S) <= A:
        raise ValueError("S must be a subset of A")
    outside = _complement(g, A)
    if not S or not outside:
        return np.zeros(len(outside), np.uint8)
    counts = g.adj[np.ix_(S, outside)].sum(axis=0)
    return np.minimum(counts, d).astype(np.uint8)


@dataclass
class EquivClassTable:
    side: tuple[int, ...]
    outside: tuple[int, ...]
    d: int
    reps: list[frozenset]
    counts: np.ndarray  # (classes, n): capped neighbour count of every vertex in each rep
    _sorted_keys: np.ndarray = field(repr=False)
    _order: np.ndarray = field(repr=False)
    _adj: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.reps)

    @property
    def vectors(self) -> np.ndarray:
        return self.counts[:, list(self.outside)]

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Class ids of capped count rows given over ``outside``.

        ``rows`` may have any leading shape; the last axis runs over ``outside``.
        """
        rows = np.asarray(rows)
        lead = rows.shape[:-1]
        if not self.outside:
            return np.zeros(lead, np.int64)
        keys = _as_keys(rows.reshape(-1, len(self.outside)))
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        found = self._sorted_keys[pos] == keys
        if not found.all():
            raise LookupError("neighbourhood vector missing from class table")
        return self._order[pos].reshape(lead)

    def class_of(self, S: Iterable[int]) -> int:
        S = list(S)
        if not set(S) <= set(self.side):
            raise ValueError("S must be a subset of the table's side")
        if not self.outside:
            return 0
        row = self._adj[np.ix_(S, self.outside)].sum(axis=0) if S else np.zeros(len(self.outside), np.int64)
        return int(self.lookup(np.minimum(row, self.d).astype(np.uint8)))


def enumerate_classes(g: Graph, A: Iterable[int], d: int, cap: Optional[int] = None) -> EquivClassTable:
    """Breadth-first closure from the empty set over single-vertex extensions.

    Representatives are numbered in discovery order: by level (set size),
    then by the extended representative, then by the added vertex.
    """
    side = tuple(sorted(set(A)))
    outside = _complement(g, side)
    d = max(d, 0)
    cap = budget(CLASS_CAP) if cap is None else cap
    adj = g.adj.astype(np.int64)
    out_idx = np.array(outside, dtype=np.int64)

    reps: list[frozenset] = [frozenset()]
    count_rows = [np.zeros(g.n, np.int64)]
    seen = {bytes(np.zeros(len(outside), np.uint8))}
    frontier = [0]
    while frontier and outside:
        cand_rows, cand_sets = [], []
        for rid in frontier:
            rep = reps[rid]
            ext = [v for v in side if v not in rep]
            if not ext:
                continue
            cand_rows.append(np.minimum(count_rows[rid][None, :] + adj[ext], d))
            cand_sets.extend(rep | {v} for v in ext)
        if not cand_rows:
            break
        rows = np.concatenate(cand_rows)
        keys = _as_keys(rows[:, out_idx])
        _, first = np.unique(keys, return_index=True)
        frontier = []
        for i in np.sort(first):
            k = keys[i].tobytes()
            if k in seen:
                continue
            seen.add(k)
            frontier.append(len(reps))
            reps.append(frozenset(cand_sets[i]))
            count_rows.append(rows[i])
            if len(reps) > cap:
                raise BudgetExceeded(f"more than {cap} equivalence classes on a side of size {len(side)}")

    counts = np.array(count_rows, dtype=np.uint8)
    if outside:
        keys = _as_keys(counts[:, out_idx])
        order = np.argsort(keys, kind="stable")
        sorted_keys = keys[order]
    else:
        order = np.zeros(1, np.int64)
        sorted_keys = np.zeros(0, np.uint8)
    return EquivClassTable(side, outside, d, reps, counts, sorted_keys, order, adj)


def class_of(table: EquivClassTable, S: Iterable[int]) -> int:
    return table.class_of(S)
