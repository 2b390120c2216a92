"""Tree patterns and enumeration of their copies inside a graph.

A copy is a *subgraph* of the host isomorphic to the pattern, not an induced
subgraph: a path on three vertices sits inside a triangle three times. Copies
are identified by their edge set, so two embeddings that differ by a pattern
automorphism are reported once.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator

from .graph import Graph

DEFAULT_COPY_CAP = 10**7
DEFAULT_MAX_PATTERN_VERTICES = 1000


class CopyCapExceeded(RuntimeError):
    """Raised when enumeration would emit more copies than the configured cap."""

    def __init__(self, cap: int):
        super().__init__(f"copy enumeration exceeded cap of {cap} copies")
        self.cap = cap


@dataclass(frozen=True)
class TreePattern:
    t: int
    edges: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.t < 2:
            raise ValueError("a tree pattern needs at least 2 vertices")
        norm = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        if len(norm) != self.t - 1 or len(set(norm)) != len(norm):
            raise ValueError(f"a tree on {self.t} vertices has exactly {self.t - 1} distinct edges")
        for u, v in norm:
            if u == v or not (0 <= u < self.t and 0 <= v < self.t):
                raise ValueError(f"bad pattern edge ({u}, {v})")
        object.__setattr__(self, "edges", norm)
        # t-1 edges plus connectivity gives acyclicity
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != self.t:
            raise ValueError("pattern is not connected")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.t)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def as_graph(self) -> Graph:
        return Graph.from_edges(self.t, self.edges)

    @cached_property
    def _plan(self) -> "_EmbeddingPlan":
        return _EmbeddingPlan.build(self)

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """All automorphisms, each as a tuple ``sigma`` with ``sigma[i]`` the image of ``i``."""
        host = _Host.of(self.as_graph())
        return tuple(_embeddings(host, self._plan, break_leaf_symmetry=False))

    def __str__(self):
        return self.name or f"tree(t={self.t})"


@dataclass(frozen=True)
class TreeCopy:
    mapping: tuple[int, ...]  # pattern vertex i -> graph vertex mapping[i]
    edges: tuple[tuple[int, int], ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.mapping))


# --- constructors --------------------------------------------------------


def edge() -> TreePattern:
    return TreePattern(2, ((0, 1),), name="edge")


def star(t: int) -> TreePattern:
    if t < 2:
        raise ValueError("star needs t >= 2")
    return TreePattern(t, tuple((0, i) for i in range(1, t)), name=f"star:{t}")


def path(t: int) -> TreePattern:
    if t < 2:
        raise ValueError("path needs t >= 2")
    return TreePattern(t, tuple((i, i + 1) for i in range(t - 1)), name=f"path:{t}")


def nearly_regular_tree(levels: int, branching: int,
                        max_vertices: int = DEFAULT_MAX_PATTERN_VERTICES) -> TreePattern:
    """Rooted tree with ``levels`` levels below the root, every internal vertex
    having ``branching`` children (root degree ``branching``, other internal
    vertices degree ``branching + 1``). Vertices are numbered breadth first."""
    if levels < 1 or branching < 1:
        raise ValueError("levels and branching must both be >= 1")
    size = sum(branching**i for i in range(levels + 1))
    if size > max_vertices:
        raise ValueError(f"T_{{{levels},{branching}}} has {size} vertices, above the cap {max_vertices}")
    edges = []
    frontier = [0]
    nxt = 1
    for _ in range(levels):
        new = []
        for parent in frontier:
            for _ in range(branching):
                edges.append((parent, nxt))
                new.append(nxt)
                nxt += 1
        frontier = new
    return TreePattern(size, tuple(edges), name=f"regular:{levels},{branching}")


def parse_pattern(spec: str) -> TreePattern:
    """Parse ``edge``, ``star:t``, ``path:t``, ``regular:l,t`` or a tree edge-list file."""
    spec = spec.strip()
    if spec == "edge":
        return edge()
    kind, _, arg = spec.partition(":")
    if kind == "star" and arg:
        return star(int(arg))
    if kind == "path" and arg:
        return path(int(arg))
    if kind == "regular" and arg:
        levels, _, branching = arg.partition(",")
        return nearly_regular_tree(int(levels), int(branching))
    file = Path(spec)
    if file.is_file():
        g = Graph.from_edge_list(file.read_text())
        return TreePattern(g.n, tuple(g.edges), name=file.name)
    raise ValueError(f"unrecognised pattern spec {spec!r}")


# --- enumeration ---------------------------------------------------------


@dataclass(frozen=True)
class _Host:
    adj: tuple[tuple[int, ...], ...]
    deg: tuple[int, ...]

    @classmethod
    def of(cls, g: Graph) -> "_Host":
        return cls(g.adjacency, tuple(g.degrees.tolist()))


@dataclass(frozen=True)
class _EmbeddingPlan:
    order: tuple[int, ...]          # pattern vertices, parents before children
    parent: tuple[int, ...]         # parent in the rooted tree, -1 for the root
    prev_leaf_sibling: tuple[int, ...]  # previous leaf with the same parent, or -1
    degree: tuple[int, ...]
    leaf_symmetry: int              # product of factorials of sibling-leaf group sizes

    @classmethod
    def build(cls, pat: TreePattern) -> "_EmbeddingPlan":
        deg = pat.degrees
        root = max(range(pat.t), key=lambda v: (deg[v], -v))
        parent = [-1] * pat.t
        order = [root]
        seen = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in pat.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    parent[w] = u
                    order.append(w)
                    queue.append(w)
        prev = [-1] * pat.t
        last_leaf: dict[int, int] = {}
        for v in order[1:]:
            if deg[v] == 1:
                prev[v] = last_leaf.get(parent[v], -1)
                last_leaf[parent[v]] = v
        groups: dict[int, int] = {}
        for v in range(pat.t):
            if v != root and deg[v] == 1:
                groups[parent[v]] = groups.get(parent[v], 0) + 1
        leaf_sym = math.prod(math.factorial(s) for s in groups.values())
        return cls(tuple(order), tuple(parent), tuple(prev), deg, leaf_sym)


def _embeddings(host: _Host, plan: _EmbeddingPlan, break_leaf_symmetry: bool) -> Iterator[tuple[int, ...]]:
    """Injective edge-preserving maps pattern -> host, in deterministic order.

    With ``break_leaf_symmetry`` sibling leaves get increasing images, keeping
    one representative per permutation of interchangeable leaves.
    """
    order, parent, prev, pdeg = plan.order, plan.parent, plan.prev_leaf_sibling, plan.degree
    t = len(order)
    n = len(host.adj)
    image = [-1] * t
    used = [False] * n

    def rec(i):
        if i == t:
            yield tuple(image)
            return
        pv = order[i]
        need = pdeg[pv]
        if i == 0:
            candidates = range(n)
        else:
            candidates = host.adj[image[parent[pv]]]
        floor = image[prev[pv]] if break_leaf_symmetry and prev[pv] >= 0 else -1
        for w in candidates:
            if w <= floor or used[w] or host.deg[w] < need:
                continue
            image[pv] = w
            used[w] = True
            yield from rec(i + 1)
            used[w] = False
        image[pv] = -1

    return rec(0)


def _is_orbit_leader(emb: tuple[int, ...], auts) -> bool:
    for sigma in auts:
        other = tuple(emb[s] for s in sigma)
        if other < emb:
            return False
    return True


def enumerate_copies(g: Graph, pattern: TreePattern, cap: int | None = DEFAULT_COPY_CAP) -> Iterator[TreeCopy]:
    """Yield every subgraph of ``g`` isomorphic to ``pattern`` exactly once.

    Raises :class:`CopyCapExceeded` once more than ``cap`` copies would be
    produced (after the first ``cap`` have been yielded).
    """
    if pattern.t > g.n:
        return
    host = _Host.of(g)
    plan = pattern._plan
    # leaf-symmetry breaking leaves |Aut| / leaf_symmetry embeddings per copy
    residual = len(pattern.automorphisms) // plan.leaf_symmetry
    auts = pattern.automorphisms if residual > 1 else ()
    count = 0
    for emb in _embeddings(host, plan, break_leaf_symmetry=True):
        if auts and not _is_orbit_leader(emb, auts):
            continue
        if cap is not None and count >= cap:
            raise CopyCapExceeded(cap)
        count += 1
        yield TreeCopy(emb, tuple(sorted((min(emb[u], emb[v]), max(emb[u], emb[v])) for u, v in pattern.edges)))


def count_copies(g: Graph, pattern: TreePattern, cap: int | None = DEFAULT_COPY_CAP) -> int:
    return sum(1 for _ in enumerate_copies(g, pattern, cap))


def contains_copy(g: Graph, pattern: TreePattern) -> bool:
    if pattern.t > g.n:
        return False
    for _ in _embeddings(_Host.of(g), pattern._plan, break_leaf_symmetry=True):
        return True
    return False
