"""Two-phase randomized ell-vertex-ranking of d-degenerate graphs.

Pipeline for a graph of maximum degree at most Delta:

1. peel vertices of degree >= 4d repeatedly to get layers L_0..L_q;
2. collect the paths whose endpoints share a layer and whose interior sits in
   lower-or-equal layers, and count them per endpoint pair (the multigraph G*);
3. colour vertices in reverse G*-peeling order, each from the half of its
   layer palette where it would close the fewest same-colour paths, uniformly
   at random;
4. for every path whose endpoints ended up equal, pick one vertex next to an
   endpoint and recolour all such vertices with a proper colouring of
   G^ell[P] from a palette above everything used so far.

:func:`rank_degenerate` first strips the vertices of degree >= Delta (for a
Delta balanced against n) and gives each a private top colour.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import (
    DegeneracyOrder,
    Graph,
    build_g_prime,
    build_g_star,
    degeneracy_order,
    greedy_colouring,
    greedy_degeneracy_order_multigraph,
    power_graph,
)
from .paths import (
    EndpointMap,
    PathFamily,
    enumerate_restricted_family,
    gamma_map,
    tau_map,
)
from .verify import RankedColouring, first_violation

log = logging.getLogger(__name__)

SPLIT_EXPONENT = 5 / 6


class RankingBug(AssertionError):
    """An internal guarantee of the algorithm failed; never an expected outcome."""


def log2n(n: int) -> float:
    return max(1.0, math.log2(n)) if n > 0 else 1.0


@dataclass(frozen=True)
class Layering:
    layer: tuple[int, ...]
    q: int
    survivor_sizes: tuple[int, ...]  # |S_0|, ..., |S_q|
    halving: bool  # |S_i| <= |S_{i-1}| / 2 held at every step

    def members(self, i: int) -> list[int]:
        return [v for v, j in enumerate(self.layer) if j == i]


def compute_layering(g: Graph, d: int) -> Layering:
    """S_0 = V, S_i = vertices of S_{i-1} with degree >= 4d in G[S_{i-1}].

    On a graph that is not d-degenerate the recursion can stall with
    S_i = S_{i-1}; it stops there and ``halving`` is reported False.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    threshold = 4 * d
    layer = [0] * g.n
    alive = set(range(g.n))
    deg = [g.degree(v) for v in range(g.n)]
    sizes = [g.n]
    halving = True
    i = 0
    while alive:
        nxt = {v for v in alive if deg[v] >= threshold}
        if not nxt:
            break
        if len(nxt) == len(alive):
            halving = False
            break
        if 2 * len(nxt) > len(alive):
            halving = False
        i += 1
        for v in nxt:
            layer[v] = i
        for v in alive - nxt:
            for w in g.adjacency[v]:
                if w in nxt:
                    deg[w] -= 1
        sizes.append(len(nxt))
        alive = nxt
    return Layering(tuple(layer), i, tuple(sizes), halving)


@dataclass(frozen=True)
class Palettes:
    """Phi_i = [2ki + 1, 2k(i+1)] for i <= q; Phi_{q+1} starts right above Phi_q."""

    k: int
    q: int

    def phase1(self, i: int) -> range:
        return range(2 * self.k * i + 1, 2 * self.k * (i + 1) + 1)

    @property
    def top_start(self) -> int:
        return 2 * self.k * (self.q + 1) + 1

    def layer_of(self, colour: int) -> int:
        return (colour - 1) // (2 * self.k)


@dataclass(frozen=True)
class RankingParams:
    ell: int
    d: int
    delta: int
    n: int
    b: float
    c_m: float
    seed: int
    k: int
    M: int

    @classmethod
    def derive(cls, n, ell, d, delta, seed=0, c_m=None, b=None) -> "RankingParams":
        """k = ceil(Delta^(floor(ell/2) - 1/2) log^b n), M = ceil(c_M Delta^floor(ell/2) / k).

        ``b`` defaults to 0 when Delta^(floor(ell/2) - 1) >= log n, else 1/4.
        """
        lg = log2n(n)
        half = ell // 2
        if b is None:
            b = 0.0 if delta ** (half - 1) >= lg else 0.25
        k = max(1, math.ceil(delta ** (half - 0.5) * lg**b - 1e-9))
        if c_m is None:
            c_m = 2 ** (ell + 2) * d ** math.ceil(ell / 2)
        M = max(1, math.ceil(c_m * delta**half / k - 1e-9))
        return cls(ell, d, delta, n, b, c_m, seed, k, M)


@dataclass(frozen=True)
class ProblemState:
    """Phase-1 bookkeeping, one entry per vertex unless noted."""

    tau_load: tuple[int, ...]  # |tau^-1(w)|
    counts: tuple[dict[int, int], ...] = field(repr=False)  # nonzero N_alpha(w) at selection
    subpalette: tuple[tuple[int, ...], ...] = field(repr=False)  # Phi(w)
    created: tuple[int, ...]  # problematic paths closed when w was coloured
    problematic: tuple[int, ...]  # path ids into the restricted family
    P: frozenset[int] = frozenset()  # problematic vertices, filled after gamma

    @property
    def max_created(self) -> int:
        return max(self.created, default=0)


def vertex_rng(seed: int, v: int) -> np.random.Generator:
    return np.random.default_rng([seed, v])


def phase1_colour(
    g: Graph,
    ell: int,
    params: RankingParams,
    layering: Layering,
    fam: PathFamily,
    tau: EndpointMap,
    order: DegeneracyOrder | Sequence[int],
) -> tuple[list[int], ProblemState]:
    k, M = params.k, params.M
    pal = Palettes(k, layering.q)
    seq = order.colouring_order if isinstance(order, DegeneracyOrder) else tuple(order)
    paths = fam.paths

    pre: list[list[int]] = [[] for _ in range(g.n)]
    for pid, w in enumerate(tau.assignment):
        pre[w].append(pid)
    tau_load = tuple(len(x) for x in pre)
    if M * k < max(tau_load, default=0):
        raise RankingBug(f"M*k = {M * k} < max tau load {max(tau_load)}")

    colour = [0] * g.n
    counts: list[dict[int, int]] = [{}] * g.n
    subs: list[tuple[int, ...]] = [()] * g.n
    created = [0] * g.n
    for w in seq:
        N: dict[int, int] = {}
        for pid in pre[w]:
            p = paths[pid]
            other = p[0] if p[-1] == w else p[-1]
            c = colour[other]
            if c == 0:
                raise RankingBug(f"tau sent path {p} to {w} before its other endpoint")
            N[c] = N.get(c, 0) + 1
        palette = pal.phase1(layering.layer[w])
        if N:
            sub = tuple(sorted(palette, key=lambda a: (N.get(a, 0), a))[:k])
        else:
            sub = tuple(palette[:k])
        c = sub[int(vertex_rng(params.seed, w).integers(k))]
        colour[w] = c
        counts[w] = N
        subs[w] = sub
        created[w] = N.get(c, 0)
        worst = max((N.get(a, 0) for a in sub), default=0)
        if worst > tau_load[w] // k or created[w] > M:
            raise RankingBug(f"subpalette cap broken at vertex {w}")

    problematic = tuple(i for i, p in enumerate(paths) if colour[p[0]] == colour[p[-1]])
    if len(problematic) != sum(created):
        raise RankingBug("problematic path count disagrees with per-vertex tallies")
    state = ProblemState(tau_load, tuple(counts), tuple(subs), tuple(created), problematic)
    return colour, state


def phase2_recolour(
    g: Graph,
    ell: int,
    colours: Sequence[int],
    P: Sequence[int] | frozenset[int],
    palettes: Palettes,
) -> tuple[list[int], int]:
    """Properly colour G^ell[P] from the top palette, greedily along its degeneracy order.

    Returns the new colouring and the number of top-palette colours used.
    """
    out = list(colours)
    if not P:
        return out, 0
    sq = power_graph(g, ell, within=P).graph
    sub, old = sq.induced(sorted(P))
    local = greedy_colouring(sub, degeneracy_order(sub).colouring_order, first=palettes.top_start)
    for i, v in enumerate(old):
        out[v] = local[i]
    return out, len(set(local))


@dataclass(frozen=True)
class RankingResult:
    colouring: RankedColouring
    ell: int
    d: int
    delta: int
    seed: int
    params: RankingParams | None = None
    layering: Layering | None = None
    state: ProblemState | None = None
    counts: dict[str, int] = field(default_factory=dict)
    split: tuple[int, ...] = ()
    # vertices the two-phase run worked on, as indices of the input graph
    base_vertices: tuple[int, ...] = ()
    base_graph: Graph | None = field(default=None, repr=False)
    family: PathFamily | None = field(default=None, repr=False)

    @property
    def num_colours(self) -> int:
        return self.colouring.num_colours

    def to_dict(self) -> dict:
        p = self.params
        return {
            "n": len(self.colouring),
            "ell": self.ell,
            "d": self.d,
            "delta": self.delta,
            "k": p.k if p else None,
            "M": p.M if p else None,
            "b": p.b if p else None,
            "q": self.layering.q if self.layering else None,
            "colours": list(self.colouring.colours),
            "palette_tags": list(self.colouring.tags or ()),
            "counts": {
                "phase1": self.counts.get("phase1", 0),
                "phase2": self.counts.get("phase2", 0),
                "split": self.counts.get("split", 0),
            },
            "seed": self.seed,
        }


def effective_degeneracy(g: Graph, d: int) -> int:
    actual = degeneracy_order(g).degeneracy
    if d < actual:
        warnings.warn(
            f"graph is {actual}-degenerate, not {d}-degenerate; using d={actual}",
            stacklevel=3,
        )
        return max(actual, 1)
    return max(d, 1)


def _assert_valid(g: Graph, ell: int, colours) -> None:
    bad = first_violation(g, ell, colours)
    if bad is not None:
        raise RankingBug(f"output is not an {ell}-vertex-ranking: {bad}")


def _greedy_result(g, ell, d, delta, seed, verify) -> RankingResult:
    colours = greedy_colouring(g, degeneracy_order(g).colouring_order)
    if verify:
        _assert_valid(g, ell, colours)
    col = RankedColouring(tuple(colours), tuple("L0" for _ in colours))
    return RankingResult(
        col, ell, d, delta, seed,
        counts={"phase1": col.num_colours, "phase2": 0, "split": 0},
        base_vertices=tuple(range(g.n)), base_graph=g,
    )


def rank_bounded_degree(
    g: Graph,
    ell: int,
    d: int,
    delta: int,
    seed: int = 0,
    *,
    c_m: float | None = None,
    b: float | None = None,
    verify: bool = True,
) -> RankingResult:
    """ell-vertex-ranking of a d-degenerate graph with maximum degree <= delta."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if g.max_degree > delta:
        raise ValueError(f"maximum degree {g.max_degree} exceeds delta={delta}")
    d = effective_degeneracy(g, d)
    if ell == 1:
        return _greedy_result(g, ell, d, delta, seed, verify)

    params = RankingParams.derive(g.n, ell, d, delta, seed, c_m=c_m, b=b)
    layering = compute_layering(g, d)
    if not layering.halving:
        raise RankingBug("layering failed to halve on a d-degenerate graph")
    fam = enumerate_restricted_family(g, ell, layering)
    order = greedy_degeneracy_order_multigraph(build_g_star(g, fam))
    tau = tau_map(fam, order)
    colours, state = phase1_colour(g, ell, params, layering, fam, tau, order)

    problem_fam = fam.subfamily(state.problematic)
    gamma = gamma_map(problem_fam, build_g_prime(g, layering))
    P = frozenset(gamma.assignment)
    state = ProblemState(
        state.tau_load, state.counts, state.subpalette, state.created, state.problematic, P
    )
    pal = Palettes(params.k, layering.q)
    colours, phase2_used = phase2_recolour(g, ell, colours, P, pal)
    if verify:
        _assert_valid(g, ell, colours)

    tags = tuple("phase2" if v in P else f"L{layering.layer[v]}" for v in range(g.n))
    phase1_used = len({c for c, t in zip(colours, tags) if t != "phase2"})
    col = RankedColouring(tuple(colours), tags)
    log.debug("n=%d k=%d M=%d q=%d |P|=%d", g.n, params.k, params.M, layering.q, len(P))
    return RankingResult(
        col, ell, d, delta, seed, params, layering, state,
        counts={"phase1": phase1_used, "phase2": phase2_used, "split": 0},
        base_vertices=tuple(range(g.n)), base_graph=g, family=fam,
    )


def split_delta(n: int, ell: int, d: int) -> int:
    """Delta = max(d, 1, floor(n^(1/(floor(ell/2)+1/2)) * log2(n)^(-5/6)))."""
    if n == 0:
        return max(d, 1)
    val = n ** (1 / (ell // 2 + 0.5)) * log2n(n) ** (-SPLIT_EXPONENT)
    return max(d, 1, math.floor(val + 1e-9))


def rank_degenerate(
    g: Graph,
    ell: int,
    d: int,
    seed: int = 0,
    *,
    c_m: float | None = None,
    verify: bool = True,
) -> RankingResult:
    """ell-vertex-ranking of an arbitrary d-degenerate graph.

    Vertices of degree >= Delta each get a distinct colour above every other
    colour; the rest is handled by :func:`rank_bounded_degree`.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    d = effective_degeneracy(g, d)
    delta = split_delta(g.n, ell, d)
    if ell == 1:
        return _greedy_result(g, ell, d, delta, seed, verify)
    S = [v for v in range(g.n) if g.degree(v) >= delta]
    if not S:
        return rank_bounded_degree(g, ell, d, delta, seed, c_m=c_m, verify=verify)

    in_S = set(S)
    sub, old = g.induced([v for v in range(g.n) if v not in in_S])
    inner = rank_bounded_degree(sub, ell, d, delta, seed, c_m=c_m, verify=False)
    colours = [0] * g.n
    tags = [""] * g.n
    for i, v in enumerate(old):
        colours[v] = inner.colouring.colours[i]
        tags[v] = inner.colouring.tags[i]
    top = max(inner.colouring.colours, default=0)
    for j, v in enumerate(S, start=1):
        colours[v] = top + j
        tags[v] = "split"
    if verify:
        _assert_valid(g, ell, colours)
    col = RankedColouring(tuple(colours), tuple(tags))
    counts = dict(inner.counts, split=len(S))
    return RankingResult(
        col, ell, d, delta, seed, inner.params, inner.layering, inner.state,
        counts=counts, split=tuple(S), base_vertices=tuple(old),
        base_graph=sub, family=inner.family,
    )
