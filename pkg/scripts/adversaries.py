"""Mean vertex cover time under each built-in adversary, relative to the
uniform rule, on random regular graphs."""
from __future__ import annotations

import argparse
import statistics

from eprocess import adversaries, generators, processes


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4096)
    ap.add_argument("--r", type=int, default=4)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    graphs = [generators.random_regular(args.n, args.r, s) for s in generators.sub_seeds(args.seed, args.trials)]
    rules = {"uniform": processes.UniformRule} | {k: (lambda k=k: adversaries.catalogue()[k]) for k in adversaries.catalogue()}
    base = None
    print("rule,mean,ratio")
    for name, make in rules.items():
        mean = statistics.fmean(processes.run(g, 0, make(), seed=i).vertex_cover_time for i, g in enumerate(graphs))
        base = base or mean
        print(f"{name},{mean:.1f},{mean / base:.3f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
