"""Colourings and exact verifiers for the uniqueness predicates.

Two counts drive everything:

* open-unique at ``u``: vertices of ``N(u)`` whose colour no other vertex of
  ``N(u)`` carries (``u``'s own colour plays no part);
* closed-unique at ``u``: colours occurring exactly once in ``N(u) + {u}``.

Each uniquely coloured vertex of a set owns exactly one once-occurring colour,
so both are "colours of multiplicity one" counts and are computed the same way.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import Graph
from .patterns import DEFAULT_COPY_CAP, TreeCopy, TreePattern, enumerate_copies

INFINITY = math.inf  # r = INFINITY asks for all d(u)+1 closed-neighbourhood colours to be unique


@dataclass(frozen=True)
class Colouring:
    colours: tuple[int, ...]  # colours[v] in 1..k
    k: int

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(int(c) for c in self.colours))
        if self.k < 1:
            raise ValueError("palette size k must be >= 1")
        for v, c in enumerate(self.colours):
            if not 1 <= c <= self.k:
                raise ValueError(f"vertex {v} has colour {c} outside 1..{self.k}")

    @classmethod
    def of(cls, colours: Sequence[int], k: int | None = None) -> "Colouring":
        colours = tuple(int(c) for c in colours)
        if k is None:
            k = max(colours, default=1)
        return cls(colours, k)

    @property
    def n(self) -> int:
        return len(self.colours)

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.colours, dtype=np.int64)

    def distinct(self) -> int:
        return len(set(self.colours))

    def permute_colours(self, perm: dict[int, int] | Sequence[int]) -> "Colouring":
        """Apply a colour permutation given as a mapping (or sequence indexed by colour-1)."""
        if not isinstance(perm, dict):
            perm = {i + 1: c for i, c in enumerate(perm)}
        return Colouring(tuple(perm[c] for c in self.colours), self.k)

    def relabel_vertices(self, perm: Sequence[int]) -> "Colouring":
        out = [0] * self.n
        for v, c in enumerate(self.colours):
            out[perm[v]] = c
        return Colouring(tuple(out), self.k)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines.extend(f"{v} {c}" for v, c in enumerate(self.colours))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Colouring":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 2:
            raise ValueError("colouring file must start with a 'n k' header line")
        n, k = int(rows[0][0]), int(rows[0][1])
        body = rows[1:]
        if len(body) != n:
            raise ValueError(f"header announces {n} vertices, found {len(body)} lines")
        colours = []
        for expected, row in enumerate(body):
            v, c = int(row[0]), int(row[1])
            if v != expected:
                raise ValueError(f"vertices must be listed in ascending order; expected {expected}, got {v}")
            colours.append(c)
        return cls(tuple(colours), k)


@dataclass(frozen=True)
class UniquenessProfile:
    open_unique: np.ndarray
    closed_unique: np.ndarray
    degree: np.ndarray


def _check_sizes(g: Graph, f: Colouring) -> None:
    if f.n != g.n:
        raise ValueError(f"colouring covers {f.n} vertices but the graph has {g.n}")


def _once_counts(g: Graph, colours: np.ndarray, closed: bool) -> np.ndarray:
    indptr, indices = g.csr
    owners = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
    members = indices
    if closed:
        owners = np.concatenate([owners, np.arange(g.n, dtype=np.int64)])
        members = np.concatenate([members, np.arange(g.n, dtype=np.int64)])
    if owners.size == 0:
        return np.zeros(g.n, dtype=np.int64)
    width = int(colours.max()) + 1
    keys, counts = np.unique(owners * width + colours[members], return_counts=True)
    return np.bincount(keys[counts == 1] // width, minlength=g.n)


def profile(g: Graph, f: Colouring) -> UniquenessProfile:
    _check_sizes(g, f)
    col = f.as_array()
    return UniquenessProfile(
        open_unique=_once_counts(g, col, closed=False),
        closed_unique=_once_counts(g, col, closed=True),
        degree=g.degrees.copy(),
    )


def is_proper(g: Graph, f: Colouring) -> bool:
    return not proper_violations(g, f)


def proper_violations(g: Graph, f: Colouring) -> list[tuple[int, int]]:
    """Monochromatic edges."""
    _check_sizes(g, f)
    col = f.as_array()
    us, vs = g.edge_arrays
    bad = np.flatnonzero(col[us] == col[vs])
    return [(int(us[i]), int(vs[i])) for i in bad]


def _eta_fraction(eta) -> Fraction:
    frac = Fraction(eta).limit_denominator(10**9) if not isinstance(eta, Fraction) else eta
    if not 0 < frac <= 1:
        raise ValueError(f"eta must lie in (0, 1], got {eta!r}")
    return frac


def eta_required(eta, d: np.ndarray) -> np.ndarray:
    """ceil(eta * d) computed exactly on a rational approximation of ``eta``."""
    frac = _eta_fraction(eta)
    d = np.asarray(d, dtype=np.int64)
    return -((-frac.numerator * d) // frac.denominator)


def eta_violations(g: Graph, f: Colouring, eta) -> list[int]:
    _check_sizes(g, f)
    need = eta_required(eta, g.degrees)
    have = _once_counts(g, f.as_array(), closed=False)
    return np.flatnonzero(have < need).tolist()


def is_eta_injective(g: Graph, f: Colouring, eta) -> bool:
    return not eta_violations(g, f, eta)


def check_r(r) -> None:
    if r == INFINITY:
        return
    if isinstance(r, bool) or not isinstance(r, (int, np.integer)) or r < 1:
        raise ValueError(f"r must be a positive integer or INFINITY, got {r!r}")


def r_required(r, d: np.ndarray) -> np.ndarray:
    check_r(r)
    d = np.asarray(d, dtype=np.int64)
    return d + 1 if r == INFINITY else np.minimum(int(r), d + 1)


def r_violations(g: Graph, f: Colouring, r) -> list[int]:
    _check_sizes(g, f)
    need = r_required(r, g.degrees)
    have = _once_counts(g, f.as_array(), closed=True)
    return np.flatnonzero(have < need).tolist()


def is_r_unique(g: Graph, f: Colouring, r) -> bool:
    return not r_violations(g, f, r)


def is_conflict_free(g: Graph, f: Colouring) -> bool:
    return is_r_unique(g, f, 1)


def is_injective(g: Graph, f: Colouring) -> bool:
    return is_eta_injective(g, f, 1)


def has_unique_colour(colours: Sequence[int], vertices: Sequence[int]) -> bool:
    return 1 in Counter(colours[v] for v in vertices).values()


@dataclass(frozen=True)
class TreeUniqueResult:
    holds: bool
    copies_checked: int
    witness: TreeCopy | None = None
    vacuous: bool = False  # pattern has more vertices than the graph


def check_tree_unique(g: Graph, f: Colouring, pattern: TreePattern,
                      cap: int | None = DEFAULT_COPY_CAP) -> TreeUniqueResult:
    """Scan copies of ``pattern`` until one without a once-occurring colour turns up."""
    _check_sizes(g, f)
    if pattern.t > g.n:
        return TreeUniqueResult(True, 0, vacuous=True)
    checked = 0
    for copy in enumerate_copies(g, pattern, cap):
        checked += 1
        if not has_unique_colour(f.colours, copy.mapping):
            return TreeUniqueResult(False, checked, witness=copy)
    return TreeUniqueResult(True, checked)


def is_tree_unique(g: Graph, f: Colouring, pattern: TreePattern,
                   cap: int | None = DEFAULT_COPY_CAP) -> bool:
    return check_tree_unique(g, f, pattern, cap).holds
