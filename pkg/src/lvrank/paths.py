"""Short undirected paths and the three path -> vertex assignments.

A path is stored as a tuple of distinct vertices in canonical form: the
lexicographically smaller of the sequence and its reversal. Since endpoints
differ, that is simply the orientation that starts at the smaller endpoint.

All enumeration goes through one key-guarded search: given a per-vertex key,
only paths whose two endpoints share a key and whose interior keys are no
larger are produced. A constant key gives the full family P_ell(G); layer
indices give the restricted family used by the ranking algorithm; colours
give exactly the violations of a colouring.
"""
from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .graph import DegeneracyOrder, Graph, Orientation, degeneracy

UPath = tuple[int, ...]

DEFAULT_MEM_BUDGET_MB = 1024
_BYTES_PER_PATH = 64  # tuple header plus list slot, per path
_BYTES_PER_VERTEX = 8


class PathBudgetExceeded(MemoryError):
    pass


class PathSizeWarning(ResourceWarning):
    pass


def mem_budget_bytes() -> int:
    mb = os.environ.get("LVR_MEM_BUDGET_MB")
    return int(float(mb) * 2**20) if mb else DEFAULT_MEM_BUDGET_MB * 2**20


def canonical(path: Sequence[int]) -> UPath:
    t = tuple(path)
    r = t[::-1]
    return t if t <= r else r


def is_path(g: Graph, path: Sequence[int]) -> bool:
    return (
        len(path) >= 2
        and len(set(path)) == len(path)
        and all(g.has_edge(a, b) for a, b in zip(path, path[1:]))
    )


def path_bytes(ell: int) -> int:
    return _BYTES_PER_PATH + _BYTES_PER_VERTEX * (ell + 1)


def predicted_path_count(n: int, ell: int, d: int, delta: int) -> int:
    """Upper bound n * 2^(ell+1) d^ceil(ell/2) Delta^floor(ell/2) on |P_ell(G)|."""
    return n * 2 ** (ell + 1) * d ** ((ell + 1) // 2) * delta ** (ell // 2)


def _warn_if_large(g: Graph, ell: int, budget: int) -> None:
    delta = g.max_degree
    # n * Delta^ell counts walks and so bounds paths; only refine when it is too big
    if g.n * delta**ell * path_bytes(ell) <= budget:
        return
    predicted = predicted_path_count(g.n, ell, max(degeneracy(g), 1), max(delta, 1))
    if predicted * path_bytes(ell) > budget:
        warnings.warn(
            f"up to {predicted} paths of length <= {ell} predicted; "
            f"exceeds memory budget of {budget // 2**20} MB",
            PathSizeWarning,
            stacklevel=3,
        )


def iter_paths(g: Graph, ell: int, key: Sequence[int] | None = None) -> Iterator[UPath]:
    """Yield canonical paths with 1..ell edges, grouped by first vertex.

    With ``key`` given, a path x_0..x_r is produced only if key[x_0] ==
    key[x_r] >= key[x_i] for every interior x_i. Vertices with a larger key
    than the start are never entered, which is what keeps the verifier and
    the restricted family cheap.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    adj = g.adjacency
    for s in range(g.n):
        ks = 0 if key is None else key[s]
        path = [s]
        on_path = {s}

        def extend(v: int, depth: int) -> Iterator[UPath]:
            for w in adj[v]:
                if w in on_path:
                    continue
                if key is not None:
                    kw = key[w]
                    if kw > ks:
                        continue
                    closes = kw == ks
                else:
                    closes = True
                path.append(w)
                if closes and w > s:
                    yield tuple(path)
                if depth + 1 < ell:
                    on_path.add(w)
                    yield from extend(w, depth + 1)
                    on_path.discard(w)
                path.pop()

        yield from extend(s, 0)


@dataclass(frozen=True)
class PathFamily:
    """A sorted, duplicate-free collection of canonical paths of length <= ell."""

    paths: tuple[UPath, ...]
    ell: int
    n: int

    def __len__(self) -> int:
        return len(self.paths)

    @cached_property
    def index(self) -> tuple[tuple[int, ...], ...]:
        """Per vertex, ids of the paths having it as an endpoint."""
        idx: list[list[int]] = [[] for _ in range(self.n)]
        for i, p in enumerate(self.paths):
            idx[p[0]].append(i)
            idx[p[-1]].append(i)
        return tuple(tuple(x) for x in idx)

    def subfamily(self, ids: Iterable[int]) -> "PathFamily":
        return PathFamily(tuple(self.paths[i] for i in sorted(set(ids))), self.ell, self.n)

    def endpoint_pairs(self) -> set[tuple[int, int]]:
        return {(p[0], p[-1]) for p in self.paths}

    def dump(self) -> str:
        return "".join(" ".join(map(str, p)) + "\n" for p in self.paths)


def _collect(g: Graph, ell: int, key, budget: int | None) -> PathFamily:
    budget = mem_budget_bytes() if budget is None else budget
    _warn_if_large(g, ell, budget)
    cap = budget // path_bytes(ell)
    out = []
    for p in iter_paths(g, ell, key):
        out.append(p)
        if len(out) > cap:
            raise PathBudgetExceeded(
                f"more than {cap} paths of length <= {ell}; raise LVR_MEM_BUDGET_MB"
            )
    out.sort()
    return PathFamily(tuple(out), ell, g.n)


def enumerate_paths(g: Graph, ell: int, budget: int | None = None) -> PathFamily:
    """Every undirected path of G with at most ``ell`` edges, once each."""
    return _collect(g, ell, None, budget)


def enumerate_restricted_family(
    g: Graph, ell: int, layering, budget: int | None = None
) -> PathFamily:
    """Paths whose endpoints share a layer L_j and whose interior lies in L_0..L_j."""
    if len(layering.layer) != g.n:
        raise ValueError("layering does not cover the graph")
    return _collect(g, ell, layering.layer, budget)


def enumerate_hat_family(g: Graph, ell: int, gprime: Orientation) -> PathFamily:
    """Paths x_0..x_r whose first edge enters x_0 and last edge enters x_r in ``gprime``."""
    fam = enumerate_paths(g, ell)
    keep = tuple(p for p in fam.paths if _in_hat(p, gprime))
    return PathFamily(keep, ell, g.n)


def _in_hat(p: UPath, gprime: Orientation) -> bool:
    return gprime.has_arc(p[1], p[0]) and gprime.has_arc(p[-2], p[-1])


# ---------------------------------------------------------------------------
# endpoint maps


@dataclass(frozen=True)
class EndpointMap:
    kind: str  # 'rho', 'tau' or 'gamma'
    assignment: tuple[int, ...]  # path id -> vertex
    n: int

    @cached_property
    def loads(self) -> tuple[int, ...]:
        cnt = [0] * self.n
        for v in self.assignment:
            cnt[v] += 1
        return tuple(cnt)

    @property
    def max_load(self) -> int:
        return max(self.loads, default=0)

    def preimage(self, v: int) -> list[int]:
        return [i for i, x in enumerate(self.assignment) if x == v]


def downstream_count(path: Sequence[int], is_down: Callable[[int, int], bool]) -> int:
    return sum(1 for a, b in zip(path, path[1:]) if is_down(a, b))


def rho_map(fam: PathFamily, orient: Orientation) -> EndpointMap:
    """Map each path to the endpoint from which most of its edges point forward.

    A traversal x_0..x_r is accepted if at least ceil(r/2) of its edges are
    oriented from x_{i-1} to x_i (bidirected edges count either way). When
    both traversals qualify the canonical first endpoint wins.
    """
    has = orient.has_arc
    out = []
    for p in fam.paths:
        r = len(p) - 1
        need = (r + 1) // 2
        if downstream_count(p, has) >= need:
            out.append(p[0])
        else:
            rev = p[::-1]
            if downstream_count(rev, has) < need:
                raise AssertionError(f"no downstream-majority traversal for {p}")
            out.append(p[-1])
    return EndpointMap("rho", tuple(out), fam.n)


def gamma_map(fam: PathFamily, gprime: Orientation) -> EndpointMap:
    """Map each path to the vertex next to a well-chosen endpoint.

    For r >= 2 a traversal v_0..v_r is accepted when the tail v_1..v_r has at
    most floor(r/2) - 1 upstream edges; the path goes to v_1. An edge (r = 1)
    goes to its smaller endpoint. Every path must have its end edges pointing
    into the endpoints under ``gprime``.
    """
    has = gprime.has_arc
    out = []
    for p in fam.paths:
        if not _in_hat(p, gprime):
            raise ValueError(f"path {' '.join(map(str, p))} does not enter both endpoints")
        r = len(p) - 1
        if r == 1:
            out.append(p[0])
            continue
        limit = r // 2 - 1
        for trav in (p, p[::-1]):
            tail = trav[1:]
            upstream = (r - 1) - downstream_count(tail, has)
            if upstream <= limit:
                out.append(trav[1])
                break
        else:
            raise AssertionError(f"no admissible traversal for {p}")
    return EndpointMap("gamma", tuple(out), fam.n)


def tau_map(fam: PathFamily, order: Sequence[int] | DegeneracyOrder) -> EndpointMap:
    """Map each path to whichever endpoint comes later in ``order``.

    ``order`` is the colouring sequence v_1..v_n. A :class:`DegeneracyOrder`
    is accepted too and read in its colouring direction (reverse peeling).
    """
    seq = order.colouring_order if isinstance(order, DegeneracyOrder) else tuple(order)
    if len(seq) != fam.n:
        raise ValueError("order does not cover all vertices")
    pos = [0] * fam.n
    for i, v in enumerate(seq):
        pos[v] = i
    out = tuple(p[-1] if pos[p[-1]] > pos[p[0]] else p[0] for p in fam.paths)
    return EndpointMap("tau", out, fam.n)


# ---------------------------------------------------------------------------
# the bounds the assignments are measured against


def rho_bound(ell: int, d: int, delta: int) -> int:
    return 2 ** (ell + 1) * d ** math.ceil(ell / 2) * delta ** (ell // 2)


def gamma_bound(ell: int, d: int, delta: int) -> int:
    if ell < 2:
        raise ValueError("the bound needs ell >= 2")
    return 2**ell * d ** (math.ceil(ell / 2) + 1) * delta ** (ell // 2 - 1)


def power_degeneracy_bound(ell: int, d: int, delta: int) -> int:
    return 2 ** (ell + 2) * d ** math.ceil(ell / 2) * delta ** (ell // 2)
