"""Normalized cover time of the E-process on random regular graphs.

Default grid: d in 3..7, n in 2^10..2^16, 5 trials per point. ``--full``
extends n up to ~5e5 (tens of minutes on one core).

    python3 scripts/figure1.py --out results/
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from eprocess import experiments

QUICK = (2**10, 2**12, 2**14, 2**16)
FULL = (10_000, 50_000, 100_000, 200_000, 300_000, 400_000, 500_000)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", default="3,4,5,6,7")
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--full", action="store_true", help="sizes up to 5e5")
    ap.add_argument("--out", default="results")
    args = ap.parse_args(argv)

    spec = experiments.SweepSpec(
        degrees=tuple(int(d) for d in args.degrees.split(",")),
        sizes=FULL if args.full else QUICK,
        trials=args.trials,
        seed=args.seed,
        workers=args.workers,
    )
    res = experiments.sweep(spec, lambda t: print(f"d={t.degree} n={t.n} #{t.trial}: {t.cover_time}", file=sys.stderr))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for fmt, name in (("csv", "trials.csv"), ("summary", "summary.csv"), ("svg", "figure1.svg")):
        experiments.emit(res, fmt, out / name)
    sys.stdout.write(experiments.summary_csv(res))
    for d, f in res.fits.items():
        if f is not None:
            model = "n ln n" if f.grows else "n"
            print(f"d={d}: c_nlogn={f.c_nlogn:.3f} c_flat={f.c_flat:.3f} better fit: {model}")
    return 1 if res.any_timeout else 0


if __name__ == "__main__":
    raise SystemExit(main())
