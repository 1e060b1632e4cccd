"""Finite / co-finite count sets, (sigma, rho) problems and LCVP constraint matrices.

Set grammar (whitespace-free)::

    N          all naturals
    N+         naturals >= 1
    {a,b,...}  finite set (non-empty)
    co{a,...}  complement of a finite set
    >=d        sugar for co{0,...,d-1}
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

OBJECTIVES = ("min", "max", "exists")


class SetSpecError(ValueError):
    pass


@dataclass(frozen=True)
class SetSpec:
    """A finite set, or the complement of one when ``cofinite`` is set."""

    cofinite: bool
    elems: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.elems):
            raise SetSpecError("negative element")
        if list(self.elems) != sorted(set(self.elems)):
            raise SetSpecError("elements must be strictly increasing")
        if not self.cofinite and not self.elems:
            raise SetSpecError("empty finite set is not allowed")

    @classmethod
    def finite(cls, *elems: int) -> "SetSpec":
        return cls(False, tuple(sorted(set(elems))))

    @classmethod
    def cofinite_of(cls, *missing: int) -> "SetSpec":
        return cls(True, tuple(sorted(set(missing))))

    @classmethod
    def at_least(cls, d: int) -> "SetSpec":
        return cls(True, tuple(range(d)))

    @property
    def kind(self) -> str:
        return "cofinite" if self.cofinite else "finite"

    def __contains__(self, c: int) -> bool:
        return contains(self, c)

    def __str__(self):
        body = ",".join(map(str, self.elems))
        if not self.cofinite:
            return "{" + body + "}"
        if not self.elems:
            return "N"
        if self.elems == (0,):
            return "N+"
        return "co{" + body + "}"


NATURALS = SetSpec(True, ())
POSITIVE = SetSpec(True, (0,))

_FINITE_RE = re.compile(r"^(co)?\{(\d+(?:,\d+)*)?\}$")


def parse_set_spec(s: str) -> SetSpec:
    s = s.strip()
    if s == "N":
        return NATURALS
    if s == "N+":
        return POSITIVE
    if s.startswith(">="):
        try:
            return SetSpec.at_least(int(s[2:]))
        except ValueError:
            raise SetSpecError(f"malformed set spec {s!r}") from None
    m = _FINITE_RE.match(s)
    if not m:
        raise SetSpecError(f"malformed set spec {s!r}")
    elems = tuple(sorted({int(x) for x in m.group(2).split(",")})) if m.group(2) else ()
    return SetSpec(bool(m.group(1)), elems)


def contains(mu: SetSpec, c: int) -> bool:
    return (c in mu.elems) != mu.cofinite


def d_value(mu: SetSpec) -> int:
    # min(max mu, max complement) always lands on the finite side
    if mu.cofinite and not mu.elems:
        return 0
    return 1 + mu.elems[-1]


def truncated_member(mu: SetSpec, c: int, d: int) -> bool:
    """Membership of a neighbour count that has been capped at ``d``.

    A capped value ``c == d`` stands for every count ``>= d``; those are all in
    ``mu`` exactly when ``mu`` is co-finite, provided ``d >= d_value(mu)``.
    """
    if d < d_value(mu):
        raise ValueError(f"truncation level {d} below d-value {d_value(mu)} of {mu}")
    if not 0 <= c <= d:
        raise ValueError(f"count {c} outside 0..{d}")
    if c < d:
        return contains(mu, c)
    return mu.cofinite


def member_table(mu: SetSpec, d: int) -> list[bool]:
    """``truncated_member`` for every capped count 0..d."""
    return [truncated_member(mu, c, d) for c in range(d + 1)]


@dataclass(frozen=True)
class Problem:
    sigma: SetSpec
    rho: SetSpec
    objective: str = "min"
    name: Optional[str] = None
    d: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        object.__setattr__(self, "d", max(d_value(self.sigma), d_value(self.rho)))

    def with_objective(self, objective: str) -> "Problem":
        return Problem(self.sigma, self.rho, objective, self.name)


def _row(sigma, rho, objective, d_column):
    return sigma, rho, objective, d_column


# name -> factory(param) returning (sigma, rho, default objective, listed d column).
# Default objectives are our choice per row; callers can override them.
_CATALOG = {
    "independent-set": (lambda p: _row(SetSpec.finite(0), NATURALS, "max", 1)),
    "dominating-set": (lambda p: _row(NATURALS, POSITIVE, "min", 1)),
    "maximal-independent-set": (lambda p: _row(SetSpec.finite(0), POSITIVE, "min", 1)),
    "total-dominating-set": (lambda p: _row(POSITIVE, POSITIVE, "min", 1)),
    "strong-stable-set": (lambda p: _row(SetSpec.finite(0), SetSpec.finite(0, 1), "max", 2)),
    "perfect-code": (lambda p: _row(SetSpec.finite(0), SetSpec.finite(1), "exists", 2)),
    "total-nearly-perfect-set": (lambda p: _row(SetSpec.finite(0, 1), SetSpec.finite(0, 1), "max", 2)),
    "weakly-perfect-dominating-set": (lambda p: _row(SetSpec.finite(0, 1), SetSpec.finite(1), "min", 2)),
    "total-perfect-dominating-set": (lambda p: _row(SetSpec.finite(1), SetSpec.finite(1), "exists", 2)),
    "induced-matching": (lambda p: _row(SetSpec.finite(1), NATURALS, "max", 2)),
    "dominating-induced-matching": (lambda p: _row(SetSpec.finite(1), POSITIVE, "min", 2)),
    "perfect-dominating-set": (lambda p: _row(NATURALS, SetSpec.finite(1), "min", 2)),
    "d-dominating-set": (lambda p: _row(NATURALS, SetSpec.at_least(p), "min", p)),
    "induced-d-regular-subgraph": (lambda p: _row(SetSpec.finite(p), NATURALS, "max", p + 1)),
    "min-degree-subgraph": (lambda p: _row(SetSpec.at_least(p), NATURALS, "max", p)),
    "max-degree-induced-subgraph": (lambda p: _row(SetSpec.finite(*range(p + 1)), NATURALS, "max", p + 1)),
}

PARAMETERIZED = ("d-dominating-set", "induced-d-regular-subgraph",
                 "min-degree-subgraph", "max-degree-induced-subgraph")
DEFAULT_PARAM = 2
CATALOG_NAMES = tuple(_CATALOG)


def catalog_row(name: str, param: int = DEFAULT_PARAM):
    """(sigma, rho, default objective, listed d) for a catalog entry."""
    if name not in _CATALOG:
        raise KeyError(f"unknown problem {name!r}; available: {', '.join(CATALOG_NAMES)}")
    if name in PARAMETERIZED and param < 1:
        raise ValueError(f"{name} needs a parameter >= 1")
    return _CATALOG[name](param)


def catalog_lookup(name: str, param: int = DEFAULT_PARAM, objective: Optional[str] = None) -> Problem:
    sigma, rho, default_obj, _ = catalog_row(name, param)
    label = f"{name}[{param}]" if name in PARAMETERIZED else name
    return Problem(sigma, rho, objective or default_obj, label)


@dataclass(frozen=True)
class ConstraintMatrix:
    entries: tuple[tuple[SetSpec, ...], ...]
    r: int = 1

    def __post_init__(self):
        q = len(self.entries)
        if q < 1 or any(len(row) != q for row in self.entries):
            raise ValueError("constraint matrix must be square with q >= 1")
        if self.r < 1:
            raise ValueError("distance parameter r must be >= 1")

    @property
    def q(self) -> int:
        return len(self.entries)

    @property
    def d(self) -> int:
        return max(d_value(mu) for row in self.entries for mu in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def from_sigma_rho(cls, sigma: SetSpec, rho: SetSpec, r: int = 1) -> "ConstraintMatrix":
        return cls(((sigma, NATURALS), (rho, NATURALS)), r)

    @classmethod
    def coloring(cls, q: int, r: int = 1) -> "ConstraintMatrix":
        zero = SetSpec.finite(0)
        return cls(tuple(tuple(zero if i == j else NATURALS for j in range(q)) for i in range(q)), r)


def parse_matrix(text: str) -> ConstraintMatrix:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "lcvp":
        raise ValueError("matrix header must be 'lcvp <q> <r>'")
    try:
        q, r = int(head[1]), int(head[2])
    except ValueError:
        raise ValueError("matrix header must be 'lcvp <q> <r>'") from None
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != q or any(len(row) != q for row in rows):
        raise ValueError(f"expected {q} rows of {q} entries")
    return ConstraintMatrix(tuple(tuple(parse_set_spec(tok) for tok in row) for row in rows), r)


def write_matrix(mat: ConstraintMatrix) -> str:
    lines = [f"lcvp {mat.q} {mat.r}"]
    lines.extend(" ".join(str(mu) for mu in row) for row in mat.entries)
    return "\n".join(lines) + "\n"
