"""Worst observed load / bound for the three path assignments and for G^ell.

Prints one row per (d, Delta, ell) cell; any ratio above 1 is a violation.
"""
import argparse
import sys
from dataclasses import dataclass

from lvrank.generators import GenSpec, generate
from lvrank.graph import build_g_prime, degeneracy, degeneracy_order, orient_acyclic, power_graph
from lvrank.paths import (
    PathFamily,
    enumerate_paths,
    gamma_bound,
    gamma_map,
    power_degeneracy_bound,
    rho_bound,
    rho_map,
)
from lvrank.twophase import compute_layering


@dataclass
class BoundsConfig:
    instances: int = 30
    n: int = 40
    ds: tuple = (1, 2, 3)
    deltas: tuple = (4, 8, 16)
    ells: tuple = (2, 3, 4)


def cell(cfg, d, delta, ell):
    worst = [0.0, 0.0, 0.0]
    for seed in range(cfg.instances):
        g = generate(GenSpec("random_d_degenerate_bounded_degree", cfg.n, d=d, delta=delta, seed=seed))
        fam = enumerate_paths(g, ell)
        rho = rho_map(fam, orient_acyclic(g, degeneracy_order(g)))
        gp = build_g_prime(g, compute_layering(g, d))
        hat = PathFamily(tuple(p for p in fam.paths
                               if gp.has_arc(p[1], p[0]) and gp.has_arc(p[-2], p[-1])), ell, g.n)
        worst[0] = max(worst[0], rho.max_load / rho_bound(ell, d, delta))
        gb = gamma_bound(ell, gp.max_out_degree, delta)
        if gb:
            worst[1] = max(worst[1], gamma_map(hat, gp).max_load / gb)
        worst[2] = max(worst[2], degeneracy(power_graph(g, ell).graph)
                       / power_degeneracy_bound(ell, d, delta))
    return worst


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=BoundsConfig.instances)
    ap.add_argument("--n", type=int, default=BoundsConfig.n)
    args = ap.parse_args(argv)
    cfg = BoundsConfig(instances=args.instances, n=args.n)
    print("d,delta,ell,rho_ratio,gamma_ratio,power_ratio")
    over = False
    for d in cfg.ds:
        for delta in cfg.deltas:
            for ell in cfg.ells:
                w = cell(cfg, d, delta, ell)
                over |= max(w) > 1
                print(f"{d},{delta},{ell}," + ",".join(f"{x:.4f}" for x in w))
    return 1 if over else 0


if __name__ == "__main__":
    sys.exit(main())
