"""Command line interface: ``eprocess <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys

from . import experiments, generators, processes, spectral, structure
from .graph import read_graph, to_text


def _ints(text: str) -> tuple[int, ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return tuple(out)


def _sizes(text: str) -> tuple[int, ...]:
    # accepts "1024,4096" or powers such as "2^10,2^12"
    out = []
    for part in text.split(","):
        part = part.strip()
        if "^" in part:
            b, e = part.split("^")
            out.append(int(b) ** int(e))
        elif part:
            out.append(int(part))
    return tuple(out)


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="edge-list file ('n m' header, then 'u v' lines)")
    p.add_argument("--family", choices=generators.FAMILIES, help="generate instead of reading")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--graph-seed", type=int, default=0)


def _load(args):
    if args.graph:
        return read_graph(args.graph)
    if args.family:
        return generators.named(generators.GenSpec(args.family, args.n, args.r, args.graph_seed))
    raise SystemExit("need --graph FILE or --family")


def _dump(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def cmd_generate(args) -> int:
    g = generators.named(generators.GenSpec(args.family, args.n, args.r, args.seed))
    text = to_text(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_run(args) -> int:
    g = _load(args)
    kw = dict(start=args.start, seed=args.seed, stop=args.stop, max_steps=args.max_steps)
    if args.process != "srw":
        kw.update(rule=processes.make_rule(args.rule, seed=args.seed), check=args.check)
    rec = processes.run_process(g, args.process, **kw)
    _dump(rec.to_dict(with_phases=not args.no_phases))
    return 1 if rec.timed_out else 0


def cmd_spectral(args) -> int:
    g = _load(args)
    s = spectral.summary(g, lazy=args.lazy, exact_mixing=g.n <= spectral.DENSE_LIMIT)
    _dump(s.as_dict())
    return 0


def cmd_hit(args) -> int:
    g = _load(args)
    target = _ints(args.target)
    rep = spectral.hitting_exact(g, target, lazy=args.lazy, with_bound=True)
    _dump({"target": list(rep.target), "exact": rep.exact, "bound": rep.bound,
           "per_start": rep.per_start.tolist() if args.per_start else None})
    return 0


def cmd_goodness(args) -> int:
    g = _load(args)
    if args.vertex is not None:
        _dump(structure.l_goodness(g, args.vertex, args.cap).as_dict())
    else:
        res = structure.graph_l_good(g, args.cap)
        _dump({"ell": res.ell, "argmin": res.argmin, "cap": args.cap,
               "vertices": [r.as_dict() for r in res.reports]})
    return 0


def cmd_density(args) -> int:
    g = _load(args)
    _dump(structure.density_check(g, args.smax, samples=args.samples, seed=args.seed).as_dict())
    return 0


def cmd_p1(args) -> int:
    g = _load(args)
    r = args.r or g.max_degree
    _dump(structure.p1_check(g, r, args.eps).as_dict())
    return 0


def cmd_sweep(args) -> int:
    spec = experiments.SweepSpec(
        degrees=_ints(args.degrees),
        sizes=_sizes(args.sizes),
        trials=args.trials,
        process=args.process,
        rule=args.rule,
        seed=args.seed,
        stop=args.stop,
        check=args.check,
        workers=args.workers,
    )

    def progress(t):
        if args.verbose:
            print(f"d={t.degree} n={t.n} trial={t.trial} cover={t.cover_time}", file=sys.stderr)

    res = experiments.sweep(spec, progress)
    if args.csv:
        experiments.emit(res, "csv", args.csv)
    if args.summary:
        experiments.emit(res, "summary", args.summary)
    if args.svg:
        experiments.emit(res, "svg", args.svg)
    if not (args.csv or args.summary):
        sys.stdout.write(experiments.summary_csv(res))
    for d, f in res.fits.items():
        if f is not None:
            print(
                f"d={d}: c_nlogn={f.c_nlogn:.4f} (rms {f.residual_nlogn:.4g}), "
                f"c_flat={f.c_flat:.4f} (rms {f.residual_flat:.4g})",
                file=sys.stderr,
            )
    return 1 if res.any_timeout else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eprocess", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a graph in edge-list format")
    p.add_argument("--family", choices=generators.FAMILIES, default="random-regular")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run", help="run one walk and print its TrialRecord as JSON")
    _add_graph_source(p)
    p.add_argument("--process", choices=processes.PROCESSES, default="e")
    p.add_argument("--rule", default="uniform", help="uniform, fixed, round-robin or adversary:<script>")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stop", choices=processes.STOPS, default="vertex")
    p.add_argument("--max-steps", type=int)
    p.add_argument("--check", action="store_true", help="assert walk invariants at every step")
    p.add_argument("--no-phases", action="store_true", help="omit the phase log")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("spectral", help="stationary distribution, eigenvalue gap, mixing time")
    _add_graph_source(p)
    p.add_argument("--lazy", action="store_true")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("hit", help="exact hitting time of a vertex set from stationarity")
    _add_graph_source(p)
    p.add_argument("--target", required=True, help="comma-separated vertex ids")
    p.add_argument("--lazy", action="store_true")
    p.add_argument("--per-start", action="store_true")
    p.set_defaults(func=cmd_hit)

    p = sub.add_parser("goodness", help="l-goodness of one vertex or the whole graph")
    _add_graph_source(p)
    p.add_argument("--cap", type=int, default=10)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--vertex", type=int)
    grp.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_goodness)

    p = sub.add_parser("density", help="densest small connected vertex sets")
    _add_graph_source(p)
    p.add_argument("--smax", type=int, default=4)
    p.add_argument("--samples", type=int, default=0, help="random sets per size (0 = exhaustive)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("p1", help="second adjacency eigenvalue against 2 sqrt(r-1) + eps")
    _add_graph_source(p)
    p.add_argument("--eps", type=float, default=0.1)
    p.set_defaults(func=cmd_p1)

    p = sub.add_parser("sweep", help="cover-time sweep over random regular graphs")
    p.add_argument("--degrees", default="4,6")
    p.add_argument("--sizes", default="2^10,2^12,2^14,2^16")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--process", choices=processes.PROCESSES, default="e")
    p.add_argument("--rule", default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stop", choices=processes.STOPS, default="vertex")
    p.add_argument("--check", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv")
    p.add_argument("--summary")
    p.add_argument("--svg")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
