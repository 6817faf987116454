"""Combinatorial checks on graphs: l-goodness, rooted subgraph counts, edge
density of small vertex sets and the second adjacency eigenvalue.

The l-goodness search treats the even subgraph as connected through its
root, which is the reading under which the unvisited component around a
vertex is relevant to the walk.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg

from .graph import Graph

EXCEEDS_CAP = "exceeds cap"


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class GoodnessReport:
    vertex: int
    ell: int | str
    cap: int
    witness: frozenset[int] | None = None

    @property
    def exceeds_cap(self) -> bool:
        return self.ell == EXCEEDS_CAP

    @property
    def lower_bound(self) -> int:
        """Certified lower bound on the vertex's l value."""
        return self.cap + 1 if self.exceeds_cap else self.ell

    def as_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "ell": self.ell,
            "cap": self.cap,
            "witness": sorted(self.witness) if self.witness is not None else None,
        }


def l_goodness(g: Graph, v: int, cap: int) -> GoodnessReport:
    """Fewest vertices in a connected even subgraph holding every edge at v.

    Branch and bound: start from the star of v, then repeatedly take the
    smallest odd-degree vertex and branch on which of its remaining edges
    to add next (earlier alternatives are excluded in later branches, so
    every edge set is generated at most once). A state with no odd vertex
    is a candidate; supersets of it can only have more vertices.
    """
    d = g.degree(v)
    if d < 2 or d % 2:
        raise StructureError(f"root {v} has degree {d}; need a positive even degree")
    star = len({w for w, _ in g.adj[v]} | {v})
    if cap < star:
        # any candidate holds the closed neighbourhood (d(v)+1 vertices when simple)
        raise StructureError(f"cap {cap} below the {star} vertices of the star at {v}")

    edges = g.edges
    inc = g.incidence
    included: set[int] = set(inc[v])
    deg: dict[int, int] = {}
    for e in included:
        a, b = edges[e]
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    odd = {x for x, k in deg.items() if k % 2}
    best = [cap + 1]
    witness: list[frozenset[int] | None] = [None]
    excluded: set[int] = set()

    def search():
        nverts = len(deg)
        if nverts >= best[0]:
            return
        if not odd:
            best[0] = nverts
            witness[0] = frozenset(included)
            return
        x = min(odd)
        options = [e for e in inc[x] if e not in included and e not in excluded]
        if not options:
            return
        # every odd vertex needs at least one more usable edge
        for y in odd:
            if y != x and not any(e not in included and e not in excluded for e in inc[y]):
                return
        newly_excluded = []
        for e in options:
            a, b = edges[e]
            y = b if a == x else a
            grows = y not in deg
            if not (grows and nverts + 1 >= best[0]):
                included.add(e)
                for z in (x, y):
                    deg[z] = deg.get(z, 0) + 1
                    odd.symmetric_difference_update((z,))
                search()
                for z in (x, y):
                    odd.symmetric_difference_update((z,))
                    deg[z] -= 1
                    if deg[z] == 0:
                        del deg[z]
                included.discard(e)
            excluded.add(e)
            newly_excluded.append(e)
        excluded.difference_update(newly_excluded)

    search()
    if witness[0] is None:
        return GoodnessReport(v, EXCEEDS_CAP, cap, None)
    return GoodnessReport(v, best[0], cap, witness[0])


@dataclass(frozen=True)
class GraphGoodness:
    ell: int | str
    argmin: int
    reports: list[GoodnessReport] = field(repr=False)


def graph_l_good(g: Graph, cap: int, threshold: int | None = None) -> GraphGoodness:
    """Minimum l over all vertices; stop early at a vertex below ``threshold``."""
    odd = [v for v in range(g.n) if g.degree(v) % 2 or g.degree(v) == 0]
    if odd:
        raise StructureError(f"vertices {odd[:5]} have odd or zero degree")
    reports = []
    best: GoodnessReport | None = None
    for v in range(g.n):
        rep = l_goodness(g, v, cap)
        reports.append(rep)
        if best is None or rep.lower_bound < best.lower_bound:
            best = rep
        if threshold is not None and not rep.exceeds_cap and rep.ell < threshold:
            break
    return GraphGoodness(best.ell, best.vertex, reports)


def count_rooted_subgraphs(g: Graph, v: int, s: int) -> int:
    """Connected edge sets whose spanned vertex set has s vertices and holds v.

    ``s = 1`` counts the empty edge set. Built breadth-first from v by
    keeping or discarding each frontier edge in turn.
    """
    if s < 1:
        raise StructureError("s must be at least 1")
    limit = 2 ** (s * g.max_degree)
    if s == 1:
        return 1
    edges = g.edges
    inc = g.incidence
    verts = {v}
    decided: set[int] = set()
    count = 0

    def rec(frontier: list[int]):
        nonlocal count
        # drop frontier edges that would overflow the vertex budget
        while frontier:
            e = frontier[-1]
            a, b = edges[e]
            if len(verts) == s and (a not in verts or b not in verts):
                frontier = frontier[:-1]
                continue
            break
        if not frontier:
            if len(verts) == s:
                count += 1
                if count > limit:
                    raise StructureError(
                        f"rooted subgraph count exceeded 2^(s*Delta) = {limit}; enumeration is broken"
                    )
            return
        e = frontier[-1]
        rest = frontier[:-1]
        decided.add(e)
        # exclude e
        rec(rest)
        # include e
        a, b = edges[e]
        new = [x for x in (a, b) if x not in verts]
        for x in new:
            verts.add(x)
        ext = list(rest)
        for x in new:
            for f in inc[x]:
                if f not in decided and f not in ext:
                    ext.append(f)
        rec(ext)
        for x in new:
            verts.discard(x)
        decided.discard(e)

    rec(list(inc[v]))
    return count


@dataclass(frozen=True)
class DensityReport:
    worst_s: int
    worst_induced: int
    worst_excess: int
    max_induced: dict[int, int]
    excess_threshold: dict[int, int]
    zero_excess_below: int | None
    probabilistic: bool

    def as_dict(self) -> dict:
        return {
            "worst": [self.worst_s, self.worst_induced, self.worst_excess],
            "max_induced": {str(k): v for k, v in self.max_induced.items()},
            "allowed_extra": {str(k): v for k, v in self.excess_threshold.items()},
            "zero_excess_below": self.zero_excess_below,
            "probabilistic": self.probabilistic,
        }


def density_allowance(s: int, n: int, r: int) -> int:
    """a = ceil(2 s ln(r e) / ln n), the extra edges a set of size s may induce."""
    if n < 2:
        return 0
    return math.ceil(2 * s * math.log(r * math.e) / math.log(n))


def density_threshold(n: int, r: int) -> int:
    """Largest s with s <= ln n / (2 ln(r e)); such sets may induce at most s edges."""
    return math.floor(math.log(n) / (2 * math.log(r * math.e)))


def _induced_count(g: Graph, members: set[int]) -> int:
    total = 0
    for x in members:
        for y, _ in g.adj[x]:
            if y in members:
                total += 1
    # each non-loop edge seen twice; a loop contributes two slots at x
    return total // 2


def connected_sets(g: Graph, s_max: int):
    """Yield every connected vertex set of size <= s_max exactly once (as a frozenset).

    ESU enumeration: each set is grown from its smallest vertex, adding only
    larger vertices that are exclusive neighbours of the newest member.
    """
    nbrs = [frozenset(w for w, _ in g.adj[x]) - {x} for x in range(g.n)]

    def extend(sub: list[int], ext: set[int], root: int, near: frozenset[int]):
        yield frozenset(sub)
        if len(sub) == s_max:
            return
        ext = set(ext)
        while ext:
            w = ext.pop()
            excl = {u for u in nbrs[w] if u > root and u not in near}
            yield from extend(sub + [w], ext | excl, root, near | nbrs[w])

    for root in range(g.n):
        near = nbrs[root] | {root}
        yield from extend([root], {u for u in nbrs[root] if u > root}, root, near)


def density_check(
    g: Graph, s_max: int, r: int | None = None, samples: int = 0, seed: int = 0
) -> DensityReport:
    """Densest connected vertex sets of each size up to ``s_max``.

    Exhaustive when ``samples == 0`` (needs ``s_max <= 30``); otherwise grows
    ``samples`` random connected sets per size and flags the result as
    probabilistic.
    """
    if s_max < 1:
        raise StructureError("s_max must be at least 1")
    r = r if r is not None else g.max_degree
    max_induced = {s: -1 for s in range(1, min(s_max, g.n) + 1)}
    if samples == 0:
        if s_max > 30:
            raise StructureError("exhaustive density check limited to s_max <= 30; pass samples")
        for sub in connected_sets(g, s_max):
            k = len(sub)
            c = _induced_count(g, set(sub))
            if c > max_induced[k]:
                max_induced[k] = c
    else:
        rng = random.Random(seed)
        for s in max_induced:
            for _ in range(samples):
                sub = _random_connected(g, s, rng)
                if sub is not None:
                    max_induced[s] = max(max_induced[s], _induced_count(g, sub))
    allow = {s: density_allowance(s, g.n, r) for s in max_induced}
    worst = None
    for s, c in max_induced.items():
        if c < 0:
            continue
        exc = c - s - allow[s]
        if worst is None or exc > worst[2]:
            worst = (s, c, exc)
    if worst is None:
        raise StructureError("no vertex sets examined")
    thr = density_threshold(g.n, r) if g.n >= 2 else None
    return DensityReport(worst[0], worst[1], worst[2], max_induced, allow, thr, samples > 0)


def _random_connected(g: Graph, s: int, rng: random.Random) -> set[int] | None:
    root = rng.randrange(g.n)
    sub = {root}
    frontier = [w for w, _ in g.adj[root] if w != root]
    while len(sub) < s and frontier:
        w = frontier.pop(rng.randrange(len(frontier)))
        if w in sub:
            continue
        sub.add(w)
        frontier.extend(u for u, _ in g.adj[w] if u not in sub)
    return sub if len(sub) == s else None


@dataclass(frozen=True)
class P1Report:
    passed: bool
    lambda_2: float
    threshold: float

    def as_dict(self) -> dict:
        return {"passed": self.passed, "lambda_2": self.lambda_2, "threshold": self.threshold}


def adjacency_second_eigenvalue(g: Graph) -> float:
    rows, cols = [], []
    for a, b in g.edges:
        rows += [a, b]
        cols += [b, a]
    A = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    if g.n <= 2000:
        return float(scipy.linalg.eigvalsh(A.toarray())[-2])
    vals = scipy.sparse.linalg.eigsh(A, k=2, which="LA", tol=1e-10, return_eigenvectors=False)
    return float(np.sort(vals)[0])


def p1_check(g: Graph, r: int, eps: float) -> P1Report:
    """Second adjacency eigenvalue against 2 sqrt(r-1) + eps.

    For an r-regular graph the walk's eigenvalues are these divided by r.
    """
    degs = set(g.degrees())
    if degs != {r}:
        raise StructureError(f"graph is not {r}-regular (degrees {sorted(degs)[:5]})")
    lam = adjacency_second_eigenvalue(g)
    thr = 2 * math.sqrt(r - 1) + eps
    return P1Report(lam <= thr, lam, thr)
