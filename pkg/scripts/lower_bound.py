"""E-process cover time against the (n/4) ln(n/2) floor that binds every
reversible walk, alongside the simple random walk on the same graphs."""
from __future__ import annotations

import argparse

from eprocess import experiments


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--sizes", default="1024,4096,16384")
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    sizes = tuple(int(x) for x in args.sizes.split(","))

    print("process,n,mean,lower_bound,ratio")
    for process in ("e", "srw"):
        spec = experiments.SweepSpec((args.degree,), sizes, args.trials, process=process, seed=args.seed)
        for row in experiments.compare_lower_bound(experiments.sweep(spec)):
            print(f"{process},{row.n},{row.mean:.1f},{row.lower_bound:.1f},{row.ratio:.3f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
