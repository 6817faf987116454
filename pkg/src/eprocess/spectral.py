"""Exact small-scale Markov chain quantities for the simple random walk.

Dense linear algebra is used up to ``DENSE_LIMIT`` vertices. Beyond that only
the stationary distribution, an iterative eigenvalue estimate and analytic
bounds are available.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg

from .graph import Graph, contract, is_connected

DENSE_LIMIT = 2000
EIG_TOL = 1e-10
SOLVE_RTOL = 1e-8


class SpectralError(ValueError):
    """Raised when a quantity is undefined (disconnected graph, zero gap, ...)."""


@dataclass(frozen=True)
class SpectralSummary:
    pi: np.ndarray
    lambda_2: float
    lambda_n: float
    lambda_max: float
    lazy: bool
    T_mix: int | None
    T_mix_analytic: int | None

    @property
    def gap(self) -> float:
        return 1.0 - self.lambda_max

    def as_dict(self) -> dict:
        return {
            "pi_min": float(self.pi.min()),
            "pi_max": float(self.pi.max()),
            "lambda_2": self.lambda_2,
            "lambda_n": self.lambda_n,
            "lambda_max": self.lambda_max,
            "gap": self.gap,
            "lazy": self.lazy,
            "T_mix_exact": self.T_mix,
            "T_mix_analytic": self.T_mix_analytic,
        }


@dataclass(frozen=True)
class HittingReport:
    target: tuple[int, ...]
    exact: float
    bound: float | None
    per_start: np.ndarray | None


def _multiplicity(g: Graph) -> sp.csr_matrix:
    # A[v, w] = number of v-w edges, a loop adds 2 to A[v, v]
    rows, cols = [], []
    for a, b in g.edges:
        rows += [a, b]
        cols += [b, a]
    data = np.ones(len(rows))
    return sp.csr_matrix((data, (rows, cols)), shape=(g.n, g.n))


def _require_no_isolated(g: Graph) -> np.ndarray:
    deg = np.array(g.degrees(), dtype=float)
    if g.n == 0 or (deg == 0).any():
        raise SpectralError("transition matrix undefined: graph has an isolated vertex")
    return deg


def transition_matrix(g: Graph, lazy: bool = False) -> np.ndarray:
    deg = _require_no_isolated(g)
    P = _multiplicity(g).toarray() / deg[:, None]
    if lazy:
        P = 0.5 * (np.eye(g.n) + P)
    return P


def stationary(g: Graph) -> np.ndarray:
    if g.m == 0:
        raise SpectralError("stationary distribution undefined without edges")
    return np.array(g.degrees(), dtype=float) / (2 * g.m)


def _symmetric_conjugate(g: Graph, lazy: bool):
    # D^{1/2} P D^{-1/2} = D^{-1/2} A D^{-1/2}, symmetric because the walk is reversible
    deg = _require_no_isolated(g)
    s = 1.0 / np.sqrt(deg)
    A = _multiplicity(g)
    S = sp.diags(s) @ A @ sp.diags(s)
    if lazy:
        S = 0.5 * (sp.identity(g.n) + S)
    return S.tocsr(), np.sqrt(deg)


def spectrum(g: Graph, lazy: bool = False) -> np.ndarray:
    """All transition-matrix eigenvalues in descending order (dense)."""
    S, _ = _symmetric_conjugate(g, lazy)
    return scipy.linalg.eigvalsh(S.toarray())[::-1]


def _extreme_eigs(g: Graph, lazy: bool) -> tuple[float, float]:
    if g.n <= DENSE_LIMIT:
        ev = spectrum(g, lazy)
        return float(ev[1]) if g.n > 1 else 0.0, float(ev[-1])
    S, top = _symmetric_conjugate(g, lazy)
    top = top / np.linalg.norm(top)
    return _power_second(S, top), _power_smallest(S)


def _power_second(S, top: np.ndarray, iters: int = 100000) -> float:
    # power iteration on (S + I)/2 (spectrum in [0, 1]) with the known top vector deflated
    rng = np.random.default_rng(0)
    x = rng.standard_normal(S.shape[0])
    x -= top * (top @ x)
    x /= np.linalg.norm(x)
    est = 0.0
    for _ in range(iters):
        y = 0.5 * (S @ x + x)
        y -= top * (top @ y)
        new = float(x @ y)
        x = y / np.linalg.norm(y)
        if abs(new - est) < EIG_TOL:
            est = new
            break
        est = new
    return 2 * est - 1


def _power_smallest(S, iters: int = 100000) -> float:
    # power iteration on (I - S)/2, whose dominant eigenvalue is (1 - lambda_n)/2
    rng = np.random.default_rng(1)
    x = rng.standard_normal(S.shape[0])
    x /= np.linalg.norm(x)
    est = 0.0
    for _ in range(iters):
        y = 0.5 * (x - S @ x)
        new = float(x @ y)
        x = y / np.linalg.norm(y)
        if abs(new - est) < EIG_TOL:
            est = new
            break
        est = new
    return 1 - 2 * est


def lambda_max(g: Graph, lazy: bool = False) -> float:
    """Largest non-trivial eigenvalue magnitude, max(|lambda_2|, |lambda_n|).

    For the lazy chain every eigenvalue is non-negative so this is lambda_2.
    """
    if not is_connected(g):
        raise SpectralError("lambda_max of a disconnected graph is 1; bounds are infinite")
    l2, ln = _extreme_eigs(g, lazy)
    return max(abs(l2), abs(ln)) if g.n > 1 else 0.0


def gap(g: Graph, lazy: bool = False) -> float:
    return 1.0 - lambda_max(g, lazy)


def _as_target(g: Graph, target) -> tuple[int, ...]:
    if isinstance(target, (int, np.integer)):
        target = (int(target),)
    members = tuple(sorted(set(int(v) for v in target)))
    if not members:
        raise SpectralError("hitting target must be nonempty")
    if len(members) == g.n:
        raise SpectralError("hitting target is the whole vertex set")
    if members[0] < 0 or members[-1] >= g.n:
        raise SpectralError(f"target {members} not inside 0..{g.n - 1}")
    return members


def hitting_times(g: Graph, target, lazy: bool = False) -> np.ndarray:
    """Vector of E_u(H_target) for every start u (0 on the target)."""
    members = _as_target(g, target)
    P = transition_matrix(g, lazy)
    rest = np.setdiff1d(np.arange(g.n), members)
    M = np.eye(len(rest)) - P[np.ix_(rest, rest)]
    rhs = np.ones(len(rest))
    try:
        h = scipy.linalg.solve(M, rhs)
    except scipy.linalg.LinAlgError as exc:
        raise SpectralError(f"hitting system is singular (disconnected graph?): {exc}") from None
    resid = np.linalg.norm(M @ h - rhs, np.inf)
    if not np.isfinite(h).all() or resid > SOLVE_RTOL * max(1.0, np.abs(h).max()):
        raise SpectralError(f"hitting system is singular (residual {resid:.3g})")
    out = np.zeros(g.n)
    out[rest] = h
    return out


def hitting_exact(g: Graph, target, lazy: bool = False, with_bound: bool = False) -> HittingReport:
    members = _as_target(g, target)
    per = hitting_times(g, members, lazy)
    exact = float(stationary(g) @ per)
    bound = hitting_bound(g, members, lazy) if with_bound else None
    return HittingReport(members, exact, bound, per)


def hitting_exact_contracted(g: Graph, target, lazy: bool = False) -> float:
    """E_pi(H_S) computed as a single-vertex hitting time on the contraction."""
    members = _as_target(g, target)
    c = contract(g, members)
    return hitting_exact(c.graph, c.gamma, lazy).exact


def hitting_bound(g: Graph, target, lazy: bool = False) -> float:
    """1/((1-lambda_max) pi_v) for a vertex, 2m/(d(S)(1-lambda_max)) for a set."""
    members = _as_target(g, target)
    gp = gap(g, lazy)
    if gp <= EIG_TOL:
        raise SpectralError("zero eigenvalue gap: hitting bound is infinite")
    if len(members) == 1:
        return 1.0 / (gp * stationary(g)[members[0]])
    return 2 * g.m / (g.set_degree(members) * gp)


def analytic_mixing_time(g: Graph, lazy: bool = False) -> int:
    gp = gap(g, lazy)
    if gp <= EIG_TOL:
        raise SpectralError("zero eigenvalue gap: chain does not mix")
    return math.ceil((3 * math.log(g.n) + 0.5 * math.log(g.max_degree)) / gp)


def mixing_time(g: Graph, lazy: bool = False, t_max: int | None = None) -> tuple[int, int]:
    """(exact, analytic) mixing times at distance 1/n^3 in max-entry norm."""
    analytic = analytic_mixing_time(g, lazy)
    if g.n > DENSE_LIMIT:
        raise SpectralError(f"exact mixing time limited to n <= {DENSE_LIMIT}")
    P = transition_matrix(g, lazy)
    pi = stationary(g)
    eps = 1.0 / g.n**3
    limit = t_max if t_max is not None else max(4 * analytic, 64)
    Pt = np.eye(g.n)
    for t in range(limit + 1):
        if np.abs(Pt - pi[None, :]).max() <= eps:
            return t, analytic
        Pt = Pt @ P
    raise SpectralError(f"no mixing within {limit} steps")


def summary(g: Graph, lazy: bool = False, exact_mixing: bool = True) -> SpectralSummary:
    if not is_connected(g):
        raise SpectralError("spectral summary needs a connected graph")
    pi = stationary(g)
    l2, ln = _extreme_eigs(g, lazy)
    lm = max(abs(l2), abs(ln))
    t_exact = t_an = None
    if lm < 1 - EIG_TOL:
        t_an = analytic_mixing_time(g, lazy)
        if exact_mixing and g.n <= DENSE_LIMIT:
            t_exact = mixing_time(g, lazy)[0]
    return SpectralSummary(pi, l2, ln, lm, lazy, t_exact, t_an)


def return_time(g: Graph, u: int) -> float:
    if not is_connected(g):
        raise SpectralError("return time needs a connected graph")
    return 1.0 / stationary(g)[u]


def commute_time(g: Graph, u: int, v: int, lazy: bool = False) -> float:
    if u == v:
        raise SpectralError("commute time needs distinct vertices")
    return float(hitting_times(g, v, lazy)[u] + hitting_times(g, u, lazy)[v])


def weighted_lower_bound(n: int) -> float:
    """(n/4) ln(n/2), a cover time lower bound for any weighted reversible walk."""
    if n < 3:
        raise ValueError("lower bound stated for n >= 3")
    return n / 4 * math.log(n / 2)


def random_subsets(n: int, count: int, rng: np.random.Generator, max_size: int | None = None) -> Iterable[tuple[int, ...]]:
    top = max_size if max_size is not None else max(1, n - 1)
    for _ in range(count):
        k = int(rng.integers(1, min(top, n - 1) + 1))
        yield tuple(sorted(rng.choice(n, size=k, replace=False).tolist()))
