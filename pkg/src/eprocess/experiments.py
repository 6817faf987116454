"""Cover-time sweeps over random regular graphs.

Logs are natural throughout; a fitted ``c`` means cover ~ c * n * ln(n).
"""
from __future__ import annotations

import csv
import io
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .generators import random_regular, sub_seeds
from .processes import PROCESSES, STOPS, TrialRecord, check_phase_closure, make_rule, run_process
from .spectral import weighted_lower_bound

TRIAL_HEADER = ["degree", "n", "trial", "cover_time", "edge_cover_time", "t_R", "t_B", "seed"]
SUMMARY_HEADER = ["degree", "n", "mean", "stddev", "normalized", "c_nlogn", "c_flat"]


@dataclass(frozen=True)
class SweepSpec:
    degrees: tuple[int, ...]
    sizes: tuple[int, ...]
    trials: int = 5
    process: str = "e"
    rule: str = "uniform"
    seed: int = 0
    stop: str = "vertex"
    check: bool = False
    workers: int = 1
    max_steps: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.process not in PROCESSES:
            raise ValueError(f"process must be one of {PROCESSES}")
        if self.stop not in STOPS:
            raise ValueError(f"stop must be one of {STOPS}")
        for r in self.degrees:
            for n in self.sizes:
                if n <= r or (n * r) % 2:
                    raise ValueError(f"no r-regular graph for r={r}, n={n}")


@dataclass(frozen=True)
class TrialResult:
    degree: int
    n: int
    trial: int
    cover_time: int | None
    edge_cover_time: int | None
    t_R: int
    t_B: int
    seed: int
    m: int
    timed_out: bool


@dataclass
class PointResult:
    degree: int
    n: int
    trials: list[TrialResult]

    @property
    def covers(self) -> list[int]:
        return [t.cover_time for t in self.trials if t.cover_time is not None]

    @property
    def timed_out(self) -> bool:
        return any(t.timed_out for t in self.trials)

    @property
    def mean(self) -> float:
        return statistics.fmean(self.covers) if self.covers else math.nan

    @property
    def stddev(self) -> float:
        c = self.covers
        return statistics.stdev(c) if len(c) > 1 else 0.0

    @property
    def normalized(self) -> float:
        return self.mean / self.n

    @property
    def mean_edge_cover(self) -> float:
        e = [t.edge_cover_time for t in self.trials if t.edge_cover_time is not None]
        return statistics.fmean(e) if e else math.nan


@dataclass(frozen=True)
class Fit:
    c_nlogn: float
    residual_nlogn: float
    c_flat: float
    residual_flat: float

    @property
    def grows(self) -> bool:
        return self.residual_nlogn < self.residual_flat


@dataclass
class SweepResult:
    spec: SweepSpec
    points: dict[tuple[int, int], PointResult]
    fits: dict[int, Fit | None] = field(default_factory=dict)

    @property
    def any_timeout(self) -> bool:
        return any(p.timed_out for p in self.points.values())


def fit(points) -> Fit:
    """Least-squares c for cover = c n ln n and for cover = c n.

    Residuals are root-mean-square errors in cover-time units so the two
    models can be compared directly.
    """
    pts = [(float(n), float(y)) for n, y in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points to fit")
    n = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    out = []
    for x in (n * np.log(n), n):
        c = float(x @ y / (x @ x))
        out += [c, float(np.sqrt(np.mean((y - c * x) ** 2)))]
    return Fit(*out)


def _trial(args) -> TrialResult:
    spec, degree, n, trial = args
    g_seed, w_seed = sub_seeds(spec.seed, 2, degree, n, trial)
    g = random_regular(n, degree, g_seed)
    rule = None if spec.process == "srw" else make_rule(spec.rule, seed=w_seed)
    kw = dict(start=0, seed=w_seed, stop=spec.stop, max_steps=spec.max_steps)
    if spec.process != "srw":
        kw.update(rule=rule, check=spec.check)
    rec: TrialRecord = run_process(g, spec.process, **kw)
    if spec.check and spec.process != "srw":
        bad = check_phase_closure(rec) if degree % 2 == 0 or spec.process == "e-directed" else []
        if bad:
            raise AssertionError(f"open blue phases in trial {(degree, n, trial)}: {bad[:3]}")
        budget = 2 * g.m if spec.process == "e-directed" else g.m
        if rec.t_B_at_cover > budget:
            raise AssertionError(f"t_B={rec.t_B_at_cover} exceeds {budget} in trial {(degree, n, trial)}")
    cover = rec.vertex_cover_time if spec.stop == "vertex" else rec.edge_cover_time
    return TrialResult(
        degree, n, trial, cover, rec.edge_cover_time, rec.t_R_at_cover, rec.t_B_at_cover,
        w_seed, g.m, rec.timed_out,
    )


def sweep(spec: SweepSpec, progress=None) -> SweepResult:
    jobs = [(spec, d, n, k) for d in spec.degrees for n in spec.sizes for k in range(spec.trials)]
    if spec.workers > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            results = list(pool.map(_trial, jobs, chunksize=1))
    else:
        results = []
        for job in jobs:
            results.append(_trial(job))
            if progress is not None:
                progress(results[-1])
    points: dict[tuple[int, int], PointResult] = {}
    for r in sorted(results, key=lambda r: (r.degree, r.n, r.trial)):
        points.setdefault((r.degree, r.n), PointResult(r.degree, r.n, [])).trials.append(r)
    res = SweepResult(spec, points)
    for d in spec.degrees:
        pts = [(n, points[(d, n)].mean) for n in spec.sizes if points[(d, n)].covers]
        res.fits[d] = fit(pts) if len(pts) >= 3 else None
    return res


@dataclass(frozen=True)
class BoundRow:
    degree: int
    n: int
    mean: float
    lower_bound: float

    @property
    def ratio(self) -> float:
        return self.mean / self.lower_bound


def compare_lower_bound(result: SweepResult) -> list[BoundRow]:
    """Mean cover time against (n/4) ln(n/2) for every point."""
    return [
        BoundRow(p.degree, p.n, p.mean, weighted_lower_bound(p.n))
        for _, p in sorted(result.points.items())
    ]


# ---------------------------------------------------------------- output


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def trials_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRIAL_HEADER)
    for _, p in sorted(result.points.items()):
        for t in p.trials:
            w.writerow([_fmt(x) for x in (t.degree, t.n, t.trial, t.cover_time, t.edge_cover_time, t.t_R, t.t_B, t.seed)])
    return buf.getvalue()


def summary_rows(result: SweepResult) -> list[dict]:
    rows = []
    for (d, n), p in sorted(result.points.items()):
        f = result.fits.get(d)
        rows.append({
            "degree": d,
            "n": n,
            "mean": p.mean,
            "stddev": p.stddev,
            "normalized": p.normalized,
            "c_nlogn": f.c_nlogn if f else None,
            "c_flat": f.c_flat if f else None,
        })
    return rows


def summary_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_HEADER)
    for row in summary_rows(result):
        w.writerow([_fmt(row[k]) for k in SUMMARY_HEADER])
    return buf.getvalue()


def parse_summary(text: str) -> list[dict]:
    rows = []
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != SUMMARY_HEADER:
        raise ValueError(f"unexpected summary header {reader.fieldnames}")
    for raw in reader:
        row = {}
        for k in SUMMARY_HEADER:
            v = raw[k]
            if k in ("degree", "n"):
                row[k] = int(v)
            else:
                row[k] = float(v) if v != "" else None
        rows.append(row)
    return rows


def svg_plot(result: SweepResult, width: int = 640, height: int = 420) -> str:
    """Normalised cover time against n (log x axis), fitted curves dashed."""
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"]
    left, right, top, bottom = 60, 110, 20, 50
    pts = sorted(result.points.items())
    xs = [math.log(n) for (_, n), _ in pts]
    ys = [p.normalized for _, p in pts if not math.isnan(p.normalized)]
    curves: dict[int, list[tuple[float, float]]] = {}
    for d, f in result.fits.items():
        if f is None:
            continue
        ns = sorted(n for (dd, n) in result.points if dd == d)
        curves[d] = [(n, f.c_nlogn * math.log(n) if f.grows else f.c_flat) for n in ns]
        ys += [y for _, y in curves[d]]
    x0, x1 = min(xs), max(xs)
    if x1 == x0:
        x1 = x0 + 1
    y1 = max(ys) * 1.1 if ys else 1.0
    pw, ph = width - left - right, height - top - bottom

    def sx(n):
        return left + (math.log(n) - x0) / (x1 - x0) * pw

    def sy(y):
        return top + ph - y / y1 * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>',
        f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle" font-size="12">n (log scale)</text>',
        f'<text x="14" y="{top + ph / 2:.1f}" font-size="12" transform="rotate(-90 14 {top + ph / 2:.1f})" '
        f'text-anchor="middle">cover time / n</text>',
    ]
    for n in sorted({n for _, n in result.points}):
        out.append(f'<text x="{sx(n):.1f}" y="{top + ph + 16}" text-anchor="middle" font-size="10">{n}</text>')
    for k in range(5):
        y = y1 * k / 4
        out.append(f'<text x="{left - 6}" y="{sy(y) + 3:.1f}" text-anchor="end" font-size="10">{y:.2f}</text>')
    degrees = sorted({d for d, _ in result.points})
    for i, d in enumerate(degrees):
        col = colors[i % len(colors)]
        line = [(n, p.normalized) for (dd, n), p in pts if dd == d and not math.isnan(p.normalized)]
        coords = " ".join(f"{sx(n):.2f},{sy(y):.2f}" for n, y in line)
        out.append(f'<polyline points="{coords}" fill="none" stroke="{col}" stroke-width="2"/>')
        for n, y in line:
            out.append(f'<circle cx="{sx(n):.2f}" cy="{sy(y):.2f}" r="3" fill="{col}"/>')
        label = f"E{d}"
        if d in curves:
            f = result.fits[d]
            coords = " ".join(f"{sx(n):.2f},{sy(y):.2f}" for n, y in curves[d])
            out.append(
                f'<polyline points="{coords}" fill="none" stroke="{col}" stroke-dasharray="5,4" stroke-width="1"/>'
            )
            label += f" [{f.c_nlogn:.2f} n ln n]" if f.grows else f" [{f.c_flat:.2f} n]"
        out.append(
            f'<text x="{width - right + 6}" y="{top + 14 + 16 * i}" font-size="11" fill="{col}">{escape(label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit(result: SweepResult, fmt: str, path: str | Path) -> Path:
    """Write ``trials`` CSV, ``summary`` CSV or ``svg`` to ``path``."""
    if not result.points:
        raise ValueError("nothing to emit: empty sweep result")
    if fmt == "csv":
        text = trials_csv(result)
    elif fmt == "summary":
        text = summary_csv(result)
    elif fmt == "svg":
        text = svg_plot(result)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    path = Path(path)
    path.write_text(text)
    return path
