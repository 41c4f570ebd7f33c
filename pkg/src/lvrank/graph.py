"""Graph core: simple undirected graphs, degeneracy orders, orientations,
power graphs and the two auxiliary structures used by the ranking algorithm
(the layered digraph G' and the path-count multigraph G*).

Vertices are dense integers ``0..n-1``; external labels are mapped at the
I/O boundary (see :func:`read_edge_list`).
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

if TYPE_CHECKING:
    from .paths import PathFamily
    from .twophase import Layering


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length does not match n")
        for v, nbrs in enumerate(self.adjacency):
            for i, w in enumerate(nbrs):
                if not 0 <= w < self.n:
                    raise ValueError(f"neighbour {w} of {v} out of range")
                if w == v:
                    raise ValueError(f"self-loop at {v}")
                if i and nbrs[i - 1] >= w:
                    raise ValueError(f"adjacency of {v} not strictly increasing")
        for v, nbrs in enumerate(self.adjacency):
            for w in nbrs:
                if v not in self._adjsets[w]:
                    raise ValueError(f"asymmetric edge {v}-{w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a simple graph; duplicate edges collapse, self-loops are rejected."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(() for _ in range(n)))

    @cached_property
    def _adjsets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, nbrs in enumerate(self.adjacency):
            for w in nbrs:
                if v < w:
                    yield (v, w)

    def induced(self, keep: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``, relabelled densely.

        Returns the subgraph and the list mapping new index -> old index.
        """
        old = sorted(keep)
        new_of = {v: i for i, v in enumerate(old)}
        adj = tuple(
            tuple(new_of[w] for w in self.adjacency[v] if w in new_of) for v in old
        )
        return Graph(len(old), adj), old


# ---------------------------------------------------------------------------
# edge-list I/O


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format (0-based indices).

    Blank lines and ``#`` comments are skipped. Every failure is reported with
    the offending line number.
    """
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative count in header", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"vertex index out of range [0, {n})", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at {a}", lineno)
        edges.append((a, b))
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, header_comment: str | None = None) -> str:
    lines = []
    if header_comment is not None:
        lines.append(f"# {header_comment}")
    lines.append(f"{g.n} {g.num_edges}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# degeneracy


@dataclass(frozen=True)
class DegeneracyOrder:
    """Min-degree peeling order.

    ``order[i]`` has at most ``degeneracy`` neighbours among the vertices that
    come after it. The reverse of ``order`` is the order in which a greedy
    algorithm sees each vertex with few *earlier* neighbours.
    """

    order: tuple[int, ...]
    degeneracy: int

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return tuple(pos)

    @property
    def colouring_order(self) -> tuple[int, ...]:
        return self.order[::-1]


def _peel(n: int, degree: list[int], neighbours_of) -> DegeneracyOrder:
    # lazy-deletion heap; ties go to the lowest vertex index
    heap = [(degree[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    order: list[int] = []
    best = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if removed[v] or dv != degree[v]:
            continue
        removed[v] = True
        order.append(v)
        best = max(best, dv)
        for w, mult in neighbours_of(v):
            if not removed[w]:
                degree[w] -= mult
                heapq.heappush(heap, (degree[w], w))
    return DegeneracyOrder(tuple(order), best)


def degeneracy_order(g: Graph) -> DegeneracyOrder:
    adj = g.adjacency
    return _peel(g.n, [len(a) for a in adj], lambda v: ((w, 1) for w in adj[v]))


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g).degeneracy


def greedy_colouring(g: Graph, order: Sequence[int], first: int = 1) -> list[int]:
    """Smallest-available greedy colouring visiting vertices in ``order``."""
    colour = [0] * g.n
    for v in order:
        used = {colour[w] for w in g.adjacency[v]}
        c = first
        while c in used:
            c += 1
        colour[v] = c
    return colour


# ---------------------------------------------------------------------------
# orientations


@dataclass(frozen=True)
class Orientation:
    """Arc sets over the edges of ``base``.

    Each edge carries at least one arc; an edge with both arcs is bidirected.
    """

    base: Graph
    out: tuple[frozenset[int], ...]

    def __post_init__(self):
        g = self.base
        if len(self.out) != g.n:
            raise ValueError("orientation size does not match graph")
        for v, outs in enumerate(self.out):
            for w in outs:
                if not g.has_edge(v, w):
                    raise ValueError(f"arc {v}->{w} is not an edge")
        for u, v in g.edges():
            if v not in self.out[u] and u not in self.out[v]:
                raise ValueError(f"edge {u}-{v} has no direction")

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out[u]

    def tag(self, u: int, v: int) -> str:
        """Direction of edge ``uv`` seen from ``u``: 'out', 'in' or 'both'."""
        fwd, back = v in self.out[u], u in self.out[v]
        if fwd and back:
            return "both"
        if fwd:
            return "out"
        if back:
            return "in"
        raise KeyError(f"{u}-{v} is not an edge")

    def out_degree(self, v: int) -> int:
        return len(self.out[v])

    @cached_property
    def max_out_degree(self) -> int:
        return max((len(o) for o in self.out), default=0)


def orient_acyclic(g: Graph, ord: DegeneracyOrder) -> Orientation:
    """Direct every edge from its earlier endpoint in ``ord`` to its later one."""
    if len(ord.order) != g.n or sorted(ord.order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the vertex set")
    pos = ord.position
    out = tuple(frozenset(w for w in g.adjacency[v] if pos[w] > pos[v]) for v in range(g.n))
    return Orientation(g, out)


def build_g_prime(g: Graph, layering: "Layering") -> Orientation:
    """Arc v->w for every edge with layer(v) <= layer(w); same-layer edges get both."""
    layer = layering.layer
    if len(layer) != g.n:
        raise ValueError("layering does not cover the graph")
    out = tuple(
        frozenset(w for w in g.adjacency[v] if layer[v] <= layer[w]) for v in range(g.n)
    )
    return Orientation(g, out)


# ---------------------------------------------------------------------------
# power graph


@dataclass(frozen=True)
class PowerGraph:
    base: Graph
    ell: int
    graph: Graph


def ball(g: Graph, v: int, radius: int) -> dict[int, int]:
    """BFS distances from ``v`` truncated at ``radius``."""
    dist = {v: 0}
    queue = deque([v])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == radius:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def power_graph(g: Graph, ell: int, within: Iterable[int] | None = None) -> PowerGraph:
    """G^ell via depth-limited BFS from every vertex.

    Two vertices lie on a common path with at most ``ell`` edges exactly when
    their distance is at most ``ell``. With ``within`` given, only the induced
    subgraph G^ell[within] is built (vertex indices stay those of ``g``).
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if ell == 1 and within is None:
        return PowerGraph(g, ell, g)
    keep = set(range(g.n)) if within is None else set(within)
    edges = []
    for v in keep:
        for w in ball(g, v, ell):
            if w > v and w in keep:
                edges.append((v, w))
    return PowerGraph(g, ell, Graph.from_edges(g.n, edges))


# ---------------------------------------------------------------------------
# path-count multigraph


@dataclass(frozen=True)
class MultigraphGStar:
    """Multigraph with m(v, w) parallel edges, stored as counts keyed by (min, max)."""

    n: int
    mult: dict[tuple[int, int], int] = field(hash=False)

    def multiplicity(self, v: int, w: int) -> int:
        return self.mult.get((v, w) if v < w else (w, v), 0)

    @cached_property
    def incident(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for (v, w), m in self.mult.items():
            inc[v].append((w, m))
            inc[w].append((v, m))
        return tuple(tuple(sorted(x)) for x in inc)

    def degree(self, v: int) -> int:
        return sum(m for _, m in self.incident[v])


def build_g_star(g: Graph, fam: "PathFamily") -> MultigraphGStar:
    mult: dict[tuple[int, int], int] = {}
    for p in fam.paths:
        key = (p[0], p[-1])  # canonical paths start at the smaller endpoint
        mult[key] = mult.get(key, 0) + 1
    return MultigraphGStar(g.n, mult)


def greedy_degeneracy_order_multigraph(gs: MultigraphGStar) -> DegeneracyOrder:
    """Min-degree peeling counting parallel edges.

    Reversing the returned order gives v_1..v_n in which every v_a has at most
    ``degeneracy`` parallel edges into {v_1..v_{a-1}}.
    """
    inc = gs.incident
    return _peel(gs.n, [gs.degree(v) for v in range(gs.n)], lambda v: inc[v])
