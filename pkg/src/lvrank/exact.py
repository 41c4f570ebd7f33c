"""Exact ell-vertex-ranking number for small graphs.

Two independent exhaustive searches are provided.

``classes`` (default) peels the top colour class. In any ranking of G the
vertices carrying the largest colour are pairwise joined by no path of at
most ell edges, i.e. they are independent in G^ell; conversely such a set can
sit on top of any ranking of the rest. Rankings restrict to induced
subgraphs, so only maximal independent sets need trying, and components are
solved separately. Results are memoised per vertex subset.

``assign`` is branch-and-bound over colour assignments with K = 1, 2, ...
Colour values are ordered, so permuting them does not preserve validity and
the usual colour-class symmetry breaking of graph colouring is unsound here.
The search instead uses the fact that K is tried only after K - 1 has been
refuted: an optimal K-colouring then uses every value in 1..K, so a branch
with more unused values than uncoloured vertices is dead.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .graph import Graph
from .paths import iter_paths
from .verify import RankedColouring, is_valid_ranking

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ExactResult:
    value: int | None  # None when the search ran out of budget
    witness: RankedColouring
    nodes_explored: int
    exhaustive: bool
    upper_bound: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": list(self.witness.colours),
            "nodes_explored": self.nodes_explored,
            "exhaustive": self.exhaustive,
            "upper_bound": self.upper_bound,
        }


def _search_order(g: Graph) -> list[int]:
    # BFS from high-degree vertices so paths close early and prune early
    seen = [False] * g.n
    out = []
    for s in sorted(range(g.n), key=lambda v: (-g.degree(v), v)):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            out.append(v)
            for w in sorted(g.adjacency[v], key=lambda u: (-g.degree(u), u)):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return out


class _Search:
    def __init__(self, g: Graph, ell: int, budget: int):
        self.g = g
        self.order = _search_order(g)
        pos = {v: i for i, v in enumerate(self.order)}
        # checks[i]: paths fully coloured once order[i] gets its colour
        self.checks: list[list[tuple[int, int, tuple[int, ...]]]] = [[] for _ in self.order]
        for p in iter_paths(g, ell):
            last = max(pos[v] for v in p)
            self.checks[last].append((p[0], p[-1], p[1:-1]))
        self.budget = budget
        self.nodes = 0

    def feasible(self, K: int, all_used: bool) -> list[int] | None:
        n = self.g.n
        colour = [0] * n
        used = [0] * (K + 1)
        distinct = 0
        order, checks = self.order, self.checks

        def ok(i: int) -> bool:
            for a, b, inner in checks[i]:
                c = colour[a]
                if c == colour[b] and all(colour[x] <= c for x in inner):
                    return False
            return True

        def rec(i: int) -> bool:
            nonlocal distinct
            if all_used and K - distinct > n - i:
                return False
            if i == n:
                return True
            v = order[i]
            for c in range(1, K + 1):
                self.nodes += 1
                if self.nodes > self.budget:
                    raise BudgetExceeded
                colour[v] = c
                if ok(i):
                    used[c] += 1
                    distinct += used[c] == 1
                    if rec(i + 1):
                        return True
                    distinct -= used[c] == 1
                    used[c] -= 1
            colour[v] = 0
            return False

        return list(colour) if rec(0) else None


class _Classes:
    def __init__(self, g: Graph, ell: int, budget: int):
        self.nbr = [sum(1 << w for w in g.adjacency[v]) for v in range(g.n)]
        self.ell = ell
        self.budget = budget
        self.nodes = 0
        self.memo: dict[int, tuple[int, tuple[int, ...]]] = {}

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded

    def _reach(self, v: int, U: int, steps: int) -> int:
        seen = front = 1 << v
        for _ in range(steps):
            nxt = 0
            while front:
                low = front & -front
                nxt |= self.nbr[low.bit_length() - 1]
                front ^= low
            front = nxt & U & ~seen
            if not front:
                break
            seen |= front
        return seen

    def components(self, U: int) -> list[int]:
        out = []
        while U:
            comp = self._reach((U & -U).bit_length() - 1, U, U.bit_count())
            out.append(comp)
            U &= ~comp
        return out

    def _maximal_independent(self, U: int):
        # Bron-Kerbosch with pivoting on the complement of G[U]^ell
        conflict = {}
        m = U
        while m:
            low = m & -m
            v = low.bit_length() - 1
            conflict[v] = self._reach(v, U, self.ell) & ~low
            m ^= low

        def bk(R, P, X):
            if not P and not X:
                yield R
                return
            pm = P | X
            pivot, best = -1, -1
            while pm:
                low = pm & -pm
                u = low.bit_length() - 1
                cnt = (P & ~conflict[u]).bit_count()
                if cnt > best:
                    pivot, best = u, cnt
                pm ^= low
            cand = P & (conflict[pivot] | (1 << pivot))
            while cand:
                low = cand & -cand
                v = low.bit_length() - 1
                free = ~conflict[v] & ~low
                yield from bk(R | low, P & free, X & free)
                P &= ~low
                X |= low
                cand ^= low

        return bk(0, U, 0)

    def solve(self, U: int) -> int:
        if not U:
            return 0
        hit = self.memo.get(U)
        if hit is not None:
            return hit[0]
        comps = self.components(U)
        if len(comps) > 1:
            val = max(self.solve(c) for c in comps)
            self.memo[U] = (val, ())
            return val
        lower = 1 if U & (U - 1) == 0 else 2  # a connected pair already needs two levels
        best, choice = U.bit_count() + 1, 0
        for S in self._maximal_independent(U):
            self._tick()
            val = 1 + self.solve(U & ~S)
            if val < best:
                best, choice = val, S
                if best <= lower:
                    break
        self.memo[U] = (best, (choice,))
        return best

    def witness(self, U: int, colour: list[int]) -> None:
        if not U:
            return
        val, choice = self.memo[U]
        if not choice:
            for c in self.components(U):
                self.witness(c, colour)
            return
        S = choice[0]
        m = S
        while m:
            low = m & -m
            colour[low.bit_length() - 1] = val
            m ^= low
        self.witness(U & ~S, colour)


def exact_ranking_number(
    g: Graph, ell: int, budget: int = DEFAULT_BUDGET, method: str = "classes"
) -> ExactResult:
    """rho_ell(G) by exhaustive search.

    If ``budget`` search nodes are exhausted first, the result has
    ``value=None`` and reports the all-distinct colouring as upper bound.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if method not in ("classes", "assign"):
        raise ValueError(f"unknown method {method!r}")
    if g.n == 0:
        return ExactResult(0, RankedColouring(()), 0, True, 0)
    trivial = RankedColouring(tuple(range(1, g.n + 1)))
    if method == "classes":
        search = _Classes(g, ell, budget)
        try:
            val = search.solve((1 << g.n) - 1)
        except BudgetExceeded:
            return ExactResult(None, trivial, search.nodes, False, g.n)
        colour = [0] * g.n
        search.witness((1 << g.n) - 1, colour)
        return ExactResult(val, RankedColouring(tuple(colour)), search.nodes, True, val)

    search = _Search(g, ell, budget)
    for K in range(1, g.n + 1):
        try:
            found = search.feasible(K, all_used=K > 1)
        except BudgetExceeded:
            return ExactResult(None, trivial, search.nodes, False, g.n)
        if found is not None:
            return ExactResult(K, RankedColouring(tuple(found)), search.nodes, True, K)
    raise AssertionError("distinct colours always form a ranking")


def exact_check_all_colourings(g: Graph, ell: int, K: int, budget: int = 2_000_000) -> bool:
    """Plain enumeration of {1..K}^n; refuses when K^n exceeds ``budget``."""
    if K**g.n > budget:
        raise BudgetExceeded(f"{K}^{g.n} colourings exceed budget {budget}")
    return any(is_valid_ranking(g, ell, c) for c in itertools.product(range(1, K + 1), repeat=g.n))
