"""Phase-2 load: max_p |N_H^+(p) & P| relative to k log2 n, over many seeds.

    python scripts/run_tail.py --n 2000 --ell 3 --trials 20
"""
import argparse
import statistics
import sys
from dataclasses import dataclass, fields

from lvrank.harness import bench_tail, records_csv


@dataclass
class TailConfig:
    family: str = "random_d_degenerate_bounded_degree"
    n: int = 2000
    ell: int = 3
    d: int = 2
    delta: int = 16
    trials: int = 20
    workers: int = 1


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    for f in fields(TailConfig):
        ap.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)
    cfg = TailConfig(**{f.name: getattr(args, f.name) for f in fields(TailConfig)})

    records = bench_tail(cfg.family, cfg.n, cfg.ell, cfg.d, range(cfg.trials),
                         delta=cfg.delta, workers=cfg.workers)
    text = records_csv(records)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    ratios = [r.tail_ratio for r in records]
    print(f"|P| median {statistics.median(r.num_problematic for r in records)}, "
          f"tail ratio median {statistics.median(ratios):.3f} max {max(ratios):.3f}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
