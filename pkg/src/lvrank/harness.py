"""Experiment orchestration: scaling of colour counts and phase-2 load tails.

Every trial row comes from a colouring that passed the verifier; a failing
trial raises and aborts the whole experiment. Data rows are a pure function
of (spec, seed), so re-runs are byte-identical unless ``timing`` is on.
"""
from __future__ import annotations

import csv
import io
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Iterable, Sequence

from .generators import GenSpec, generate
from .graph import Graph, degeneracy_order, power_graph
from .twophase import RankingResult, log2n, rank_bounded_degree, rank_degenerate

TRIAL_FIELDS = (
    "kind", "family", "n", "ell", "d", "delta", "k", "M", "b", "q", "seed",
    "colours_total", "colours_phase1", "colours_phase2", "colours_split",
    "num_problematic", "max_out_P", "tail_ratio", "scaling_ratio",
)


@dataclass(frozen=True)
class ExperimentRecord:
    family: str
    n: int
    ell: int
    d: int
    delta: int
    k: int | None
    M: int | None
    b: float | None
    q: int | None
    seed: int
    colours_total: int
    colours_phase1: int
    colours_phase2: int
    colours_split: int
    num_problematic: int
    max_out_P: int
    tail_ratio: float
    scaling_ratio: float
    status: str = "ok"
    wall_time: float = 0.0

    def row(self, timing: bool = False) -> list:
        d = asdict(self)
        out = ["trial"] + [_fmt(d[f]) for f in TRIAL_FIELDS[1:]]
        if timing:
            out.append(f"{self.wall_time:.3f}")
        return out


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def scaling_norm(n: int, ell: int) -> float:
    """n^(1 - 1/(floor(ell/2) + 1/2)) * log2 n; identical for ell = 2k and 2k + 1."""
    return n ** (1 - 1 / (ell // 2 + 0.5)) * log2n(n)


def phase2_load(g: Graph, ell: int, P: Iterable[int]) -> int:
    """max over p of |N_H^+(p) & P|, H the acyclic orientation of G^ell from its peeling order."""
    P = set(P)
    if not P:
        return 0
    sq = power_graph(g, ell).graph
    pos = degeneracy_order(sq).position
    return max(
        sum(1 for w in sq.adjacency[p] if pos[w] > pos[p] and w in P) for p in range(sq.n)
    )


def run_trial(spec: GenSpec, ell: int, seed: int | None = None, delta: int | None = None,
              measure_tail: bool = True) -> ExperimentRecord:
    """Generate, rank, verify and measure one instance.

    ``delta`` selects the bounded-degree algorithm with that bound; otherwise
    the degree-splitting algorithm picks its own.
    """
    seed = spec.seed if seed is None else seed
    g = generate(replace(spec, seed=seed))
    t0 = time.perf_counter()
    if delta is None:
        res = rank_degenerate(g, ell, spec.d, seed)
    else:
        res = rank_bounded_degree(g, ell, spec.d, delta, seed)
    elapsed = time.perf_counter() - t0
    return record_from(spec.family, g, res, measure_tail=measure_tail, wall_time=elapsed)


def record_from(family: str, g: Graph, res: RankingResult, measure_tail: bool = True,
                wall_time: float = 0.0) -> ExperimentRecord:
    p = res.params
    P = res.state.P if res.state else frozenset()
    load = phase2_load(res.base_graph, res.ell, P) if (measure_tail and P) else 0
    k = p.k if p else None
    n = g.n
    total = res.num_colours
    c = res.counts
    if total != c["phase1"] + c["phase2"] + c["split"]:
        raise AssertionError("colour counts do not add up")
    return ExperimentRecord(
        family=family, n=n, ell=res.ell, d=res.d, delta=res.delta,
        k=k, M=p.M if p else None, b=p.b if p else None,
        q=res.layering.q if res.layering else None, seed=res.seed,
        colours_total=total, colours_phase1=c["phase1"], colours_phase2=c["phase2"],
        colours_split=c["split"], num_problematic=len(P), max_out_P=load,
        tail_ratio=load / (k * log2n(res.base_graph.n)) if k else 0.0,
        scaling_ratio=total / scaling_norm(n, res.ell) if n else 0.0,
        wall_time=wall_time,
    )


def _run(args):
    return run_trial(*args)


def run_trials(jobs: Sequence[tuple], workers: int = 1) -> list[ExperimentRecord]:
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run, jobs))
    else:
        records = [_run(j) for j in jobs]
    return sorted(records, key=lambda r: (r.family, r.n, r.ell, r.seed))


def bench_scaling(family: str, ns: Sequence[int], ell: int, d: int, seeds: Sequence[int],
                  delta: int | None = None, workers: int = 1,
                  measure_tail: bool = False) -> tuple[list[ExperimentRecord], list[dict]]:
    """One trial per (n, seed), plus per-n medians of colours and normalised ratio."""
    jobs = [(GenSpec(family, n, d=d, delta=delta, seed=s), ell, s, None, measure_tail)
            for n in ns for s in seeds]
    records = run_trials(jobs, workers)
    return records, summarise(records)


def summarise(records: Sequence[ExperimentRecord]) -> list[dict]:
    out = []
    for n in sorted({r.n for r in records}):
        rs = [r for r in records if r.n == n]
        out.append({
            "n": n,
            "ell": rs[0].ell,
            "median_colours": statistics.median(r.colours_total for r in rs),
            "median_ratio": statistics.median(r.scaling_ratio for r in rs),
            "trials": len(rs),
        })
    return out


def bench_tail(family: str, n: int, ell: int, d: int, seeds: Sequence[int],
               delta: int | None = None, workers: int = 1) -> list[ExperimentRecord]:
    jobs = [(GenSpec(family, n, d=d, delta=delta, seed=s), ell, s, delta, True) for s in seeds]
    return run_trials(jobs, workers)


def records_csv(records: Sequence[ExperimentRecord], summaries: Sequence[dict] = (),
                timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(TRIAL_FIELDS) + (["wall_time_s"] if timing else []))
    for r in records:
        w.writerow(r.row(timing))
    for s in summaries:
        row = {f: "" for f in TRIAL_FIELDS}
        row.update(kind="summary", n=s["n"], ell=s["ell"],
                   colours_total=_fmt(float(s["median_colours"])),
                   scaling_ratio=_fmt(s["median_ratio"]))
        w.writerow([row[f] for f in TRIAL_FIELDS] + ([""] if timing else []))
    return buf.getvalue()


def is_nonincreasing(values: Sequence[float], slack: float = 1.25) -> bool:
    """Each value is at most ``slack`` times its predecessor."""
    return all(b <= a * slack for a, b in zip(values, values[1:]))


def ratio_series(summaries: Sequence[dict]) -> list[float]:
    return [s["median_ratio"] for s in sorted(summaries, key=lambda s: s["n"])]

