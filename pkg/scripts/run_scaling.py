"""Colour counts of the degree-splitting algorithm against n^(1/3) log2 n.

    python scripts/run_scaling.py --out scaling.csv
"""
import argparse
import sys
from dataclasses import dataclass, fields

from lvrank.harness import bench_scaling, is_nonincreasing, ratio_series, records_csv


@dataclass
class ScalingConfig:
    family: str = "random_d_degenerate"
    min_exp: int = 10
    max_exp: int = 14
    ell: int = 2
    d: int = 2
    trials: int = 5
    workers: int = 1
    slack: float = 1.25


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    for f in fields(ScalingConfig):
        ap.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)
    cfg = ScalingConfig(**{f.name: getattr(args, f.name) for f in fields(ScalingConfig)})

    ns = [2**e for e in range(cfg.min_exp, cfg.max_exp + 1)]
    records, summaries = bench_scaling(cfg.family, ns, cfg.ell, cfg.d, range(cfg.trials),
                                       workers=cfg.workers)
    text = records_csv(records, summaries)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    ratios = ratio_series(summaries)
    for s in summaries:
        print(f"n={s['n']:>6}  median colours={s['median_colours']:>6}  ratio={s['median_ratio']:.3f}",
              file=sys.stderr)
    ok = is_nonincreasing(ratios[-3:], cfg.slack)
    print(f"non-increasing over the three largest n (slack {cfg.slack}): {ok}", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
