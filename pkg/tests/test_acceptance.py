"""Exit criteria for the package, each run at its stated size and tolerance.

Every test prints one PASS/FAIL line; the lines are collected again at the
end of the pytest run. Run alone with ``pytest -m acceptance``.
"""
import json
import math
import os
import subprocess
import sys
from functools import lru_cache

import numpy as np
import pytest

from lvrank.exact import exact_ranking_number
from lvrank.generators import GenSpec, generate
from lvrank.graph import Graph, build_g_prime, degeneracy, degeneracy_order, orient_acyclic, power_graph
from lvrank.harness import bench_scaling, is_nonincreasing, ratio_series, records_csv
from lvrank.paths import (
    PathFamily,
    enumerate_paths,
    gamma_bound,
    gamma_map,
    power_degeneracy_bound,
    rho_bound,
    rho_map,
)
from lvrank.twophase import compute_layering, rank_bounded_degree, rank_degenerate
from lvrank.verify import is_valid_ranking
from oracles import chromatic_number, small_diameter_subsets

pytestmark = pytest.mark.acceptance

GRID = [(d, delta, ell) for d in (1, 2, 3) for delta in (4, 8, 16) for ell in (2, 3, 4)]


def random_connected(rng, n):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    while True:
        p = rng.uniform(0.2, 0.9)
        g = Graph.from_edges(n, [e for e in pairs if rng.random() < p])
        if n == 0 or len(power_graph(g, max(n - 1, 1)).graph.adjacency[0]) == n - 1:
            return g


def random_graph(rng, n):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    p = rng.uniform(0.1, 0.8)
    return Graph.from_edges(n, [e for e in pairs if rng.random() < p])


def oracle_valid(g, ell, colours):
    """Vectorised subgraph definition: every small-diameter connected set has a unique maximum."""
    subsets = small_diameter_subsets(g, ell)
    mask = np.zeros((len(subsets), g.n), dtype=bool)
    for i, U in enumerate(subsets):
        mask[i, list(U)] = True
    C = np.asarray(colours)[:, None, :]  # colourings x 1 x n
    masked = np.where(mask[None], C, 0)
    top = masked.max(axis=2, keepdims=True)
    ties = (masked == top).sum(axis=2)
    return ~(ties > 1).any(axis=1)


def sample_colourings(rng, n, count):
    out = np.empty((count, n), dtype=np.int64)
    for i in range(count):
        if i % 2 == 0:
            out[i] = rng.integers(1, rng.integers(1, n + 1) + 1, size=n)
        else:
            # a ranking by distinct colours, then one or two forced collisions
            c = rng.permutation(n) + 1
            for _ in range(rng.integers(1, 3)):
                v, w = rng.integers(n, size=2)
                c[v] = c[w]
            out[i] = c
    return out


@lru_cache(maxsize=None)
def grid_instances(d, delta, ell, count):
    rng = np.random.default_rng([d, delta, ell])
    out = []
    for i in range(count):
        n = int(rng.integers(8, 49))
        spec = GenSpec("random_d_degenerate_bounded_degree", n, d=d, delta=delta, seed=i)
        out.append(generate(spec))
    return tuple(out)


def test_1_definition_equivalence(criterion):
    rng = np.random.default_rng(1)
    checked = disagree = valid_seen = 0
    for n in range(1, 9):
        for _ in range(500):
            g = random_connected(rng, n)
            for ell in (1, 2, 3):
                cols = sample_colourings(rng, n, 200)
                want = oracle_valid(g, ell, cols)
                for c, w in zip(cols.tolist(), want):
                    got = is_valid_ranking(g, ell, c)
                    disagree += got != bool(w)
                    valid_seen += got
                    checked += 1
    criterion(1, "path verifier == subgraph definition", disagree == 0,
              f"{checked} colourings, {valid_seen} valid, {disagree} disagreements")


def test_2_path_map_load_bounds(criterion):
    worst_rho = worst_gamma = 0.0
    bad = total = 0
    for d, delta, ell in GRID:
        for g in grid_instances(d, delta, ell, 100):
            fam = enumerate_paths(g, ell)
            rho = rho_map(fam, orient_acyclic(g, degeneracy_order(g)))
            gp = build_g_prime(g, compute_layering(g, d))
            hat = PathFamily(
                tuple(p for p in fam.paths if gp.has_arc(p[1], p[0]) and gp.has_arc(p[-2], p[-1])),
                ell, g.n,
            )
            gamma = gamma_map(hat, gp)
            rb = rho_bound(ell, d, delta)
            gb = gamma_bound(ell, gp.max_out_degree, delta)
            bad += rho.max_load > rb
            bad += hat.paths != () and gamma.max_load > gb
            worst_rho = max(worst_rho, rho.max_load / rb)
            if gb:
                worst_gamma = max(worst_gamma, gamma.max_load / gb)
            total += 1
    criterion(2, "rho and gamma preimage bounds", bad == 0,
              f"{total} instances, {bad} violations, worst load/bound rho {worst_rho:.3f} "
              f"gamma {worst_gamma:.3f}")


def test_3_power_degeneracy(criterion):
    bad = total = 0
    worst = 0.0
    for d, delta, ell in GRID:
        for g in grid_instances(d, delta, ell, 100):
            got = degeneracy(power_graph(g, ell).graph)
            bound = power_degeneracy_bound(ell, d, delta)
            bad += got > bound
            worst = max(worst, got / bound)
            total += 1
    criterion(3, "degeneracy of G^ell bound", bad == 0,
              f"{total} instances, {bad} violations, worst ratio {worst:.3f}")


def test_4_layering(criterion):
    graphs = [(g, d) for d, delta, ell in GRID for g in grid_instances(d, delta, ell, 100)]
    rng = np.random.default_rng(4)
    for i in range(300):
        d = int(rng.integers(1, 5))
        n = int(2 ** rng.uniform(1, 12))
        graphs.append((generate(GenSpec("random_d_degenerate", n, d=d, seed=i)), d))
    for n in (16, 64, 256):
        graphs.append((generate(GenSpec("tree", n, seed=n)), 1))
        graphs.append((generate(GenSpec("star", n)), 1))
    graphs += [(generate(GenSpec("grid", 20)), 2), (generate(GenSpec("hypercube", 8)), 8)]
    bad = deepest = 0
    for g, d in graphs:
        lay = compute_layering(g, d)
        sizes = lay.survivor_sizes
        ok = lay.halving and all(2 * b <= a for a, b in zip(sizes, sizes[1:]))
        ok = ok and lay.q <= math.log2(max(g.n, 1))
        bad += not ok
        deepest = max(deepest, lay.q)
    criterion(4, "layering halves and q <= log2 n", bad == 0,
              f"{len(graphs)} instances, {bad} violations, deepest q = {deepest}")


def fuzz_instance(rng, i):
    n = int(2 ** rng.uniform(1, math.log2(300))) if i % 20 else int(rng.integers(300, 2001))
    family = rng.choice(["random_d_degenerate", "random_d_degenerate",
                         "random_d_degenerate_bounded_degree", "tree", "grid", "cycle", "star"])
    d = int(rng.integers(1, 4))
    if family == "grid":
        spec = GenSpec("grid", max(1, int(math.sqrt(n))), seed=i)
    elif family == "cycle":
        spec = GenSpec("cycle", max(n, 3))
    elif family == "random_d_degenerate_bounded_degree":
        spec = GenSpec(family, n, d=d, delta=int(rng.integers(d, 4 * d + 8)), seed=i)
    else:
        spec = GenSpec(str(family), n, d=d, seed=i)
    return generate(spec)


def test_5_end_to_end_validity(criterion):
    rng = np.random.default_rng(5)
    failures = []
    trials = 1000
    largest = 0
    for i in range(trials):
        g = fuzz_instance(rng, i)
        ell = int(rng.integers(2, 5))
        seed = int(rng.integers(2**31))
        res = rank_degenerate(g, ell, degeneracy(g), seed, verify=False)
        if not is_valid_ranking(g, ell, res.colouring.colours):
            failures.append((i, g.n, ell, seed))
        largest = max(largest, g.n)
    criterion(5, "rank_degenerate output always verifies", not failures,
              f"{trials} trials, n <= {largest}, {len(failures)} failures {failures[:3]}")


def test_6_hypercube_values(criterion):
    got = {dim: exact_ranking_number(generate(GenSpec("hypercube", dim)), 2) for dim in (1, 2, 3)}
    ok = all(r.exhaustive and r.value == dim + 1 for dim, r in got.items())
    criterion(6, "rho_2(Q_d) = d + 1 for d = 1, 2, 3", ok,
              ", ".join(f"Q{dim}={r.value}" for dim, r in got.items()))


def test_7_oracle_sandwich(criterion):
    rng = np.random.default_rng(7)
    bad = []
    count = 0
    for i in range(220):
        n = int(rng.integers(2, 11))
        g = random_graph(rng, n)
        chi = chromatic_number(g)
        exact = {ell: exact_ranking_number(g, ell) for ell in (1, 2, 3)}
        if not all(r.exhaustive for r in exact.values()):
            bad.append((i, "budget"))
            continue
        rho = {ell: r.value for ell, r in exact.items()}
        if not rho[3] >= rho[2] >= rho[1] >= chi:
            bad.append((i, "order", rho, chi))
        for ell in (2, 3):
            used = rank_degenerate(g, ell, degeneracy(g), seed=i).num_colours
            if rho[ell] > used:
                bad.append((i, ell, rho[ell], used))
        count += 1
    criterion(7, "exact <= algorithm, rho_3 >= rho_2 >= rho_1 >= chi", not bad,
              f"{count} graphs, n <= 10, {len(bad)} violations {bad[:3]}")


def test_8_scaling(criterion):
    ns = [2**e for e in range(10, 15)]
    _, summaries = bench_scaling("random_d_degenerate", ns, 2, 2, range(5))
    ratios = ratio_series(summaries)
    ok = is_nonincreasing(ratios[-3:], slack=1.25)
    criterion(8, "median colours / (n^(1/3) log2 n) non-increasing", ok,
              "ratios " + ", ".join(f"{n}:{r:.3f}" for n, r in zip(ns, ratios)))


def test_9_phase1_cap(criterion):
    runs = bad = 0
    worst = 0.0
    for d, delta, ell in GRID:
        for j, g in enumerate(grid_instances(d, delta, ell, 100)[:25]):
            res = rank_bounded_degree(g, ell, d, delta, seed=j, verify=False)
            st, p = res.state, res.params
            ok = max(st.created, default=0) <= p.M and p.M * p.k >= max(st.tau_load, default=0)
            bad += not ok
            worst = max(worst, max(st.created, default=0) / p.M)
            runs += 1
    rng = np.random.default_rng(9)
    for i in range(100):
        g = fuzz_instance(rng, i)
        res = rank_degenerate(g, int(rng.integers(2, 5)), degeneracy(g), seed=i, verify=False)
        if res.state is None:
            continue
        st, p = res.state, res.params
        bad += not (max(st.created, default=0) <= p.M and p.M * p.k >= max(st.tau_load, default=0))
        runs += 1
    criterion(9, "created <= M and M*k >= max tau load", bad == 0,
              f"{runs} instrumented runs, {bad} violations, worst created/M {worst:.3f}")


def _cli(*args, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "lvrank", *args], env=env, check=True,
                          capture_output=True, text=True).stdout


def test_10_determinism(criterion, tmp_path):
    g = generate(GenSpec("random_d_degenerate", 400, d=2, seed=10))
    same = []
    for ell in (2, 3, 4):
        a = json.dumps(rank_degenerate(g, ell, 2, seed=3).to_dict())
        b = json.dumps(rank_degenerate(g, ell, 2, seed=3).to_dict())
        same.append(a == b)
    rows = [records_csv(*bench_scaling("random_d_degenerate", [128, 256], 3, 2, range(3),
                                       measure_tail=True)) for _ in range(2)]
    same.append(rows[0] == rows[1])

    path = tmp_path / "g.txt"
    path.write_text(_cli("gen", "random_d_degenerate", "--n", "300", "--d", "2", "--seed", "1",
                         hashseed=0))
    ranks = {_cli("rank", str(path), "--ell", "3", "--seed", "7", hashseed=h) for h in (1, 2)}
    bench = {_cli("bench-tail", "--n", "150", "--ell", "3", "--trials", "2", hashseed=h)
             for h in (1, 2)}
    same += [len(ranks) == 1, len(bench) == 1]
    criterion(10, "identical inputs give byte-identical JSON and CSV", all(same),
              f"{sum(same)}/{len(same)} comparisons identical, incl. separate processes")
