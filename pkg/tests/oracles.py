"""Independent brute-force oracles used to freeze expected values.

None of these share code paths with the package beyond the Graph container.
"""
from __future__ import annotations

import itertools
import math

import numpy as np


def _popcount(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x)


def even_subgraph_ell_bruteforce(g, v: int, chunk: int = 1 << 20) -> float:
    """Min vertex count over all edge masks that are even, hold every edge at v
    and are connected. Plain enumeration of all 2^m masks (m <= 24)."""
    m = g.m
    assert m <= 24, "bitmask oracle limited to m <= 24"
    inc = np.zeros(g.n, dtype=np.int64)
    for e, (a, b) in enumerate(g.edges):
        if a != b:
            inc[a] |= 1 << e
            inc[b] |= 1 << e
    vmask = 0
    for e, (a, b) in enumerate(g.edges):
        if v in (a, b):
            vmask |= 1 << e
    candidates = []
    for lo in range(0, 1 << m, chunk):
        masks = np.arange(lo, min(lo + chunk, 1 << m), dtype=np.int64)
        ok = (masks & vmask) == vmask
        for x in range(g.n):
            ok &= (_popcount(masks & inc[x]) & 1) == 0
        candidates.extend(masks[ok].tolist())
    best = math.inf
    for mask in candidates:
        verts, ok = _span_connected(g, mask)
        if ok:
            best = min(best, len(verts))
    return best


def _span_connected(g, mask: int):
    es = [g.edges[e] for e in range(g.m) if mask >> e & 1]
    verts = {x for ab in es for x in ab}
    if not verts:
        return verts, False
    parent = {x: x for x in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in es:
        parent[find(a)] = find(b)
    return verts, len({find(x) for x in verts}) == 1


def even_subgraph_ell_cycle_space(g, v: int) -> float:
    """Same quantity by enumerating the cycle space (XOR span of fundamental
    cycles), for graphs with too many edges for the plain bitmask oracle."""
    # spanning tree by DFS
    parent_edge = {0: None}
    stack = [0]
    tree = set()
    while stack:
        x = stack.pop()
        for y, e in g.adj[x]:
            if y not in parent_edge:
                parent_edge[y] = (x, e)
                tree.add(e)
                stack.append(y)

    def path_to_root(x):
        out = 0
        while parent_edge[x] is not None:
            p, e = parent_edge[x]
            out ^= 1 << e
            x = p
        return out

    basis = []
    for e, (a, b) in enumerate(g.edges):
        if e not in tree:
            basis.append((1 << e) ^ path_to_root(a) ^ path_to_root(b))
    vmask = 0
    for e, (a, b) in enumerate(g.edges):
        if v in (a, b):
            vmask |= 1 << e
    best = math.inf
    k = len(basis)
    assert k <= 20
    # Gray-code walk through all 2^k combinations
    cur = 0
    for i in range(1, 1 << k):
        j = (i & -i).bit_length() - 1
        cur ^= basis[j]
        if cur & vmask == vmask:
            verts, ok = _span_connected(g, cur)
            if ok:
                best = min(best, len(verts))
    return best


def rooted_count_bruteforce(g, v: int, s: int) -> int:
    """Connected edge sets spanning exactly s vertices including v, by
    choosing the vertex set first and trying every subset of its induced
    edges."""
    if s == 1:
        return 1
    total = 0
    others = [x for x in range(g.n) if x != v]
    for rest in itertools.combinations(others, s - 1):
        verts = set(rest) | {v}
        ind = [e for e, (a, b) in enumerate(g.edges) if a in verts and b in verts]
        for mask in range(1, 1 << len(ind)):
            chosen = [g.edges[ind[i]] for i in range(len(ind)) if mask >> i & 1]
            span = {x for ab in chosen for x in ab}
            if span != verts:
                continue
            parent = {x: x for x in span}

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            for a, b in chosen:
                parent[find(a)] = find(b)
            if len({find(x) for x in span}) == 1:
                total += 1
    return total


def transition(g) -> np.ndarray:
    P = np.zeros((g.n, g.n))
    for a, b in g.edges:
        P[a, b] += 1
        P[b, a] += 1
    return P / P.sum(axis=1, keepdims=True)


def hitting_from_fundamental(g, v: int, lazy: bool = False) -> float:
    """E_pi(H_v) = Z_vv / pi_v with Z = (I - P + 1 pi)^{-1} - 1 pi."""
    P = transition(g)
    if lazy:
        P = 0.5 * (np.eye(g.n) + P)
    deg = np.array([len(a) for a in g.adj], dtype=float)
    pi = deg / deg.sum()
    Pi = np.outer(np.ones(g.n), pi)
    Z = np.linalg.inv(np.eye(g.n) - P + Pi) - Pi
    return Z[v, v] / pi[v]


def eigen_oracle(g, lazy: bool = False) -> np.ndarray:
    P = transition(g)
    if lazy:
        P = 0.5 * (np.eye(g.n) + P)
    return np.sort(np.linalg.eigvals(P).real)[::-1]


def mixing_time_eig(g, lazy: bool, eps: float) -> int:
    """Smallest t with max |P^t - pi| <= eps, powering through an eigendecomposition."""
    P = transition(g)
    if lazy:
        P = 0.5 * (np.eye(g.n) + P)
    deg = np.array([len(a) for a in g.adj], dtype=float)
    pi = deg / deg.sum()
    w, V = np.linalg.eig(P)
    Vi = np.linalg.inv(V)
    for t in range(10000):
        Pt = (V * w**t) @ Vi
        if np.abs(Pt.real - pi).max() <= eps:
            return t
    raise RuntimeError("no mixing")


def srw_cover_time_exact(g, start: int) -> float:
    """Expected vertex cover time of the simple random walk by solving the
    chain on (visited set, position) states. Small graphs only."""
    n = g.n
    assert n <= 10
    P = transition(g)
    full = (1 << n) - 1
    states = [(S, x) for S in range(1 << n) for x in range(n) if S >> x & 1 and S != full]
    index = {s: i for i, s in enumerate(states)}
    A = np.eye(len(states))
    rhs = np.ones(len(states))
    for (S, x), i in index.items():
        for y in range(n):
            if P[x, y] == 0:
                continue
            T = S | (1 << y)
            if T != full:
                A[i, index[(T, y)]] -= P[x, y]
    h = np.linalg.solve(A, rhs)
    return float(h[index[(1 << start, start)]])


def even_subgraph_ell_all(g, chunk: int = 1 << 21) -> list[float]:
    """Bitmask oracle answering every vertex at once: the even masks are
    enumerated a single time, then filtered per root."""
    m = g.m
    assert m <= 24, "bitmask oracle limited to m <= 24"
    inc = np.zeros(g.n, dtype=np.int64)
    for e, (a, b) in enumerate(g.edges):
        if a != b:
            inc[a] |= 1 << e
            inc[b] |= 1 << e
    even = []
    for lo in range(0, 1 << m, chunk):
        masks = np.arange(lo, min(lo + chunk, 1 << m), dtype=np.int64)
        ok = np.ones(len(masks), dtype=bool)
        for x in range(g.n):
            ok &= (_popcount(masks & inc[x]) & 1) == 0
        even.extend(masks[ok].tolist())
    spans = []
    for mask in even:
        verts, ok = _span_connected(g, mask)
        if ok:
            spans.append((mask, len(verts)))
    out = []
    for v in range(g.n):
        vmask = 0
        for e, (a, b) in enumerate(g.edges):
            if v in (a, b):
                vmask |= 1 << e
        out.append(min((k for mask, k in spans if mask & vmask == vmask), default=math.inf))
    return out
