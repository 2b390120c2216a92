"""Exact colour numbers on small graphs by canonical-colouring search.

Colourings are enumerated as restricted growth strings (vertex 0 gets colour
1, a new colour is always the next unused one), which visits one colouring per
class of colour permutations. Each predicate is split into local constraints
that are checked as soon as their last vertex is coloured.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .colouring import Colouring, check_r, eta_required, r_required
from .graph import Graph
from .patterns import DEFAULT_COPY_CAP, TreePattern, enumerate_copies

MODES = ("proper", "eta", "r", "tree")
DEFAULT_GUARD = 12


class GuardExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ExactQuery:
    graph: Graph
    mode: str
    eta: float | None = None
    r: float | None = None
    pattern: TreePattern | None = None
    guard: int = DEFAULT_GUARD

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.mode == "eta" and self.eta is None:
            raise ValueError("eta mode needs eta")
        if self.mode == "r":
            if self.r is None:
                raise ValueError("r mode needs r")
            check_r(self.r)
        if self.mode == "tree" and self.pattern is None:
            raise ValueError("tree mode needs a pattern")


@dataclass(frozen=True)
class ExactResult:
    k: int
    witness: Colouring
    nodes: int  # search nodes visited across all k


Check = Callable[[list], bool]


def _once(colours, verts) -> int:
    return sum(1 for c in Counter(colours[v] for v in verts).values() if c == 1)


def _constraints(q: ExactQuery) -> list[tuple[int, Check]]:
    g = q.graph
    out: list[tuple[int, Check]] = []
    if q.mode == "proper":
        for u, v in g.edges:
            out.append((v, lambda c, u=u, v=v: c[u] != c[v]))
    elif q.mode == "eta":
        need = eta_required(q.eta, g.degrees).tolist()
        for u in range(g.n):
            nbrs = g.adjacency[u]
            if nbrs:
                out.append((max(nbrs), lambda c, nb=nbrs, k=need[u]: _once(c, nb) >= k))
    elif q.mode == "r":
        need = r_required(q.r, g.degrees).tolist()
        for u in range(g.n):
            closed = g.adjacency[u] + (u,)
            out.append((max(closed), lambda c, cl=closed, k=need[u]: _once(c, cl) >= k))
    else:
        for copy in enumerate_copies(g, q.pattern, DEFAULT_COPY_CAP):
            verts = copy.mapping
            out.append((max(verts), lambda c, vs=verts: _once(c, vs) >= 1))
    return out


def exact_chromatic(query: ExactQuery) -> ExactResult:
    """Least k admitting a colouring that satisfies the query's predicate.

    Returns the lexicographically least canonical witness for that k.
    """
    g = query.graph
    if g.n > query.guard:
        raise GuardExceeded(f"n = {g.n} exceeds the exact-search guard {query.guard}")
    if g.n == 0:
        return ExactResult(0, Colouring((), 1), 0)
    checks_at: list[list[Check]] = [[] for _ in range(g.n)]
    for last, chk in _constraints(query):
        checks_at[last].append(chk)

    nodes = 0
    colours = [0] * g.n

    def search(i: int, used: int, k: int) -> bool:
        nonlocal nodes
        if i == g.n:
            return True
        for c in range(1, min(used + 1, k) + 1):
            nodes += 1
            colours[i] = c
            if all(chk(colours) for chk in checks_at[i]) and search(i + 1, max(used, c), k):
                return True
        colours[i] = 0
        return False

    for k in range(1, g.n + 1):
        if search(0, 0, k):
            return ExactResult(k, Colouring(tuple(colours), k), nodes)
    raise AssertionError("the all-distinct colouring satisfies every predicate")


def chromatic_number(g: Graph, **kw) -> int:
    return exact_chromatic(ExactQuery(g, "proper", **kw)).k


def r_unique_number(g: Graph, r, **kw) -> int:
    return exact_chromatic(ExactQuery(g, "r", r=r, **kw)).k
