"""Undirected simple graphs and the G(n, p) generator.

Graphs are immutable. Internally the adjacency is held in CSR form
(``indptr``/``indices``) with each neighbour slice sorted, so ``N(u)`` is a
contiguous sorted run and membership is a binary search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

SEED_MAX = 2**64 - 1


@dataclass(frozen=True)
class GenParams:
    n: int
    p: float
    seed: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        if not (0.0 < self.p < 1.0) or math.isnan(self.p):
            raise ValueError(f"p must lie strictly between 0 and 1, got {self.p!r}")
        if not 0 <= self.seed <= SEED_MAX:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


def make_rng(seed: int) -> np.random.Generator:
    """The one generator used everywhere: numpy's PCG64 seeded by a 64-bit int."""
    return np.random.Generator(np.random.PCG64(seed))


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``."""

    def __init__(self, n: int, us: np.ndarray, vs: np.ndarray):
        # trusted constructor: us < vs, lexicographically sorted, no duplicates
        self.n = int(n)
        self._us = np.asarray(us, dtype=np.int64)
        self._vs = np.asarray(vs, dtype=np.int64)
        rows = np.concatenate([self._us, self._vs])
        cols = np.concatenate([self._vs, self._us])
        order = np.lexsort((cols, rows))
        self._indices = cols[order]
        counts = np.bincount(rows, minlength=self.n)
        self._indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=self._indptr[1:])
        self._degrees = counts.astype(np.int64)
        for arr in (self._us, self._vs, self._indices, self._indptr, self._degrees):
            arr.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from explicit edges, rejecting loops, duplicates and bad vertices."""
        if n < 0:
            raise ValueError("n must be non-negative")
        pairs = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            pairs.append((min(u, v), max(u, v)))
        pairs.sort()
        for a, b in zip(pairs, pairs[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        if pairs:
            arr = np.array(pairs, dtype=np.int64)
            return cls(n, arr[:, 0], arr[:, 1])
        empty = np.zeros(0, dtype=np.int64)
        return cls(n, empty, empty)

    # --- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._us)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self._us.tolist(), self._vs.tolist()))

    @property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self._us, self._vs

    @property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        return self._indptr, self._indices

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise IndexError(f"vertex {u} out of range for n={self.n}")

    def neighbours(self, u: int) -> tuple[int, ...]:
        self._check_vertex(u)
        return self.adjacency[u]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        lo, hi = self._indptr[u], self._indptr[u + 1]
        i = lo + np.searchsorted(self._indices[lo:hi], v)
        return bool(i < hi and self._indices[i] == v)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex sorted neighbour tuples (materialised lazily)."""
        flat = self._indices.tolist()
        ptr = self._indptr.tolist()
        return tuple(tuple(flat[ptr[u]:ptr[u + 1]]) for u in range(self.n))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``u`` renamed ``perm[u]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    # --- interchange ---------------------------------------------------

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 2:
            raise ValueError("edge list must start with a 'n m' header line")
        n, m = int(rows[0][0]), int(rows[0][1])
        body = rows[1:]
        if len(body) != m:
            raise ValueError(f"header announces {m} edges, found {len(body)}")
        edges = []
        for row in body:
            if len(row) != 2:
                raise ValueError(f"malformed edge line: {' '.join(row)!r}")
            edges.append((int(row[0]), int(row[1])))
        return cls.from_edges(n, edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self._us, other._us)
                and np.array_equal(self._vs, other._vs))

    def __hash__(self):
        return hash((self.n, self._us.tobytes(), self._vs.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def generate(params: GenParams) -> Graph:
    """Sample G(n, p).

    Candidate edges are visited in lexicographic ``(u, v)``, ``u < v`` order;
    row ``u`` consumes ``n - u - 1`` uniforms from the PCG64 stream and keeps
    the pairs whose draw is below ``p``.
    """
    n, p = params.n, params.p
    rng = make_rng(params.seed)
    us, vs = [], []
    for u in range(n - 1):
        hits = np.flatnonzero(rng.random(n - u - 1) < p)
        if hits.size:
            us.append(np.full(hits.size, u, dtype=np.int64))
            vs.append(hits + (u + 1))
    if us:
        return Graph(n, np.concatenate(us), np.concatenate(vs))
    empty = np.zeros(0, dtype=np.int64)
    return Graph(n, empty, empty)


def degree(g: Graph, u: int) -> int:
    g._check_vertex(u)
    return int(g.degrees[u])


def neighbourhood(g: Graph, u: int, closed: bool = False) -> frozenset[int]:
    nbrs = frozenset(g.neighbours(u))
    return nbrs | {u} if closed else nbrs


# small named graphs, used by tests and the CLI


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, ())
