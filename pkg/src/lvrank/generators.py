"""Seeded instance families."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .graph import Graph, degeneracy, format_edge_list

FAMILIES = (
    "path",
    "cycle",
    "tree",
    "grid",
    "hypercube",
    "complete",
    "star",
    "random_d_degenerate",
    "random_d_degenerate_bounded_degree",
)

RETRY_CAP = 20


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int  # vertex count; rows for 'grid', dimension for 'hypercube'
    d: int = 1
    delta: int | None = None
    seed: int = 0
    cols: int | None = None  # grid only; defaults to n

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _rng(spec: GenSpec) -> np.random.Generator:
    return np.random.default_rng([spec.seed, FAMILIES.index(spec.family)])


def _random_degenerate(spec: GenSpec) -> list[tuple[int, int]]:
    rng = _rng(spec)
    edges = []
    for v in range(1, spec.n):
        picks = rng.choice(v, size=min(spec.d, v), replace=False)
        edges.extend((v, int(u)) for u in picks)
    return edges


def _random_degenerate_bounded(spec: GenSpec) -> list[tuple[int, int]]:
    rng = _rng(spec)
    deg = [0] * spec.n
    edges = []
    for v in range(1, spec.n):
        chosen: set[int] = set()
        want = min(spec.d, v)
        tries = 0
        while len(chosen) < want and tries < RETRY_CAP * want:
            tries += 1
            u = int(rng.integers(v))
            if u in chosen or deg[u] >= spec.delta:
                continue
            chosen.add(u)
        # if earlier vertices are saturated, v keeps fewer back-neighbours
        for u in sorted(chosen):
            deg[u] += 1
            deg[v] += 1
            edges.append((v, u))
    return edges


def generate(spec: GenSpec) -> Graph:
    f, n = spec.family, spec.n
    if f not in FAMILIES:
        raise ValueError(f"unknown family {f!r}")
    if n < 0 or spec.d < 0:
        raise ValueError("n and d must be non-negative")
    if f == "path":
        g = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    elif f == "cycle":
        if n < 3:
            raise ValueError("a cycle needs n >= 3")
        g = Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    elif f == "tree":
        rng = _rng(spec)
        g = Graph.from_edges(n, [(v, int(rng.integers(v))) for v in range(1, n)])
    elif f == "grid":
        rows, cols = n, spec.cols if spec.cols is not None else n
        idx = lambda r, c: r * cols + c  # noqa: E731
        edges = [(idx(r, c), idx(r, c + 1)) for r in range(rows) for c in range(cols - 1)]
        edges += [(idx(r, c), idx(r + 1, c)) for r in range(rows - 1) for c in range(cols)]
        g = Graph.from_edges(rows * cols, edges)
    elif f == "hypercube":
        N = 1 << n
        g = Graph.from_edges(N, [(v, v ^ (1 << b)) for v in range(N) for b in range(n) if v < v ^ (1 << b)])
    elif f == "complete":
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    elif f == "star":
        g = Graph.from_edges(n, [(0, v) for v in range(1, n)])
    elif f == "random_d_degenerate":
        g = Graph.from_edges(n, _random_degenerate(spec))
        if degeneracy(g) > spec.d:
            raise AssertionError("generated graph exceeds requested degeneracy")
    else:
        if spec.delta is None or spec.delta < spec.d:
            raise ValueError("bounded-degree family needs delta >= d")
        g = Graph.from_edges(n, _random_degenerate_bounded(spec))
        if degeneracy(g) > spec.d or g.max_degree > spec.delta:
            raise AssertionError("generated graph is out of family")
    return g


def generate_text(spec: GenSpec) -> str:
    return format_edge_list(generate(spec), header_comment=spec.to_json())
