"""Seeded graph generators: random regular graphs and small named gadgets."""
from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .graph import Graph, build, is_connected

FAMILIES = ("random-regular", "cycle", "complete", "torus-grid", "bowtie", "barbell", "petersen")

# pairing attempts per random_regular call before giving up
DEFAULT_ATTEMPTS = 200


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int = 0
    r: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.family == "random-regular":
            _check_regular(self.n, self.r)


def _check_regular(n: int, r: int) -> None:
    if r < 1 or n <= r:
        raise ValueError(f"random regular graph needs 1 <= r < n, got n={n}, r={r}")
    if (n * r) % 2:
        raise ValueError(f"n*r must be even, got n={n}, r={r}")


def sub_seeds(seed: int, count: int, *key: int) -> list[int]:
    """Derive ``count`` independent 64-bit seeds from ``seed`` and a key path."""
    ss = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=tuple(key))
    return [int(x) for x in ss.generate_state(count, dtype=np.uint64)]


def _pair_stubs(n: int, r: int, rng: np.random.Generator) -> list[tuple[int, int]] | None:
    # Steger-Wormald style pairing: shuffle the unmatched points, keep every
    # proposed pair that is neither a loop nor a repeat, retry the rest.
    stubs = rng.permutation(np.repeat(np.arange(n, dtype=np.int64), r))
    a = np.minimum(stubs[0::2], stubs[1::2])
    b = np.maximum(stubs[0::2], stubs[1::2])
    keys = a * n + b
    _, first = np.unique(keys, return_index=True)
    keep = np.zeros(len(keys), dtype=bool)
    keep[first] = True
    keep &= a != b
    edges = set(zip(a[keep].tolist(), b[keep].tolist()))
    leftover: Counter[int] = Counter(a[~keep].tolist())
    leftover.update(b[~keep].tolist())
    while leftover:
        if not _completable(edges, leftover):
            return None
        rest = [v for v, k in leftover.items() for _ in range(k)]
        rest = rng.permutation(rest).tolist()
        leftover = Counter()
        it = iter(rest)
        for x, y in zip(it, it):
            if x > y:
                x, y = y, x
            if x != y and (x, y) not in edges:
                edges.add((x, y))
            else:
                leftover[x] += 1
                leftover[y] += 1
    return sorted(edges)


def _completable(edges: set[tuple[int, int]], leftover: Counter[int]) -> bool:
    verts = list(leftover)
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if (min(a, b), max(a, b)) not in edges:
                return True
    return False


def random_regular(n: int, r: int, seed: int, max_attempts: int = DEFAULT_ATTEMPTS) -> Graph:
    """Simple connected r-regular graph on n vertices, deterministic in ``seed``.

    Each attempt runs on its own sub-seed, so a rejected (stuck or
    disconnected) sample is replayable on its own.
    """
    _check_regular(n, r)
    if r == 2:
        # the connected 2-regular graphs are exactly the labelled cycles
        rng = random.Random(sub_seeds(seed, 1)[0])
        order = list(range(n))
        rng.shuffle(order)
        return build(n, [(order[i], order[(i + 1) % n]) for i in range(n)])
    for sub in sub_seeds(seed, max_attempts):
        rng = np.random.default_rng(sub)
        edges = _pair_stubs(n, r, rng)
        if edges is None:
            continue
        # seeded random edge order so edge ids carry no structure
        order = rng.permutation(len(edges))
        g = build(n, [edges[i] for i in order])
        if is_connected(g):
            return g
    raise GenerationError(
        f"no simple connected {r}-regular graph on {n} vertices after "
        f"{max_attempts} attempts (seed={seed})"
    )


def cycle(n: int) -> Graph:
    if n < 1:
        raise ValueError("cycle needs n >= 1")
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return build(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def torus_grid(n: int) -> Graph:
    k = math.isqrt(n)
    if k * k != n or k < 3:
        raise ValueError(f"torus grid needs n = k^2 with k >= 3, got n={n}")
    edges = []
    for i in range(k):
        for j in range(k):
            v = i * k + j
            edges.append((v, i * k + (j + 1) % k))
            edges.append((v, ((i + 1) % k) * k + j))
    return build(n, edges)


def bowtie() -> Graph:
    # vertex 0 is the shared centre
    return build(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


def barbell(k: int, path_len: int = 1) -> Graph:
    """Two copies of K_k joined by a path with ``path_len`` edges."""
    if k < 2 or path_len < 1:
        raise ValueError("barbell needs k >= 2 and path_len >= 1")
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    edges += [(k + i, k + j) for i in range(k) for j in range(i + 1, k)]
    inner = path_len - 1
    chain = [k - 1] + [2 * k + i for i in range(inner)] + [k]
    edges += list(zip(chain, chain[1:]))
    return build(2 * k + inner, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build(10, outer + spokes + inner)


def named(spec: GenSpec) -> Graph:
    f = spec.family
    if f == "random-regular":
        return random_regular(spec.n, spec.r, spec.seed)
    if f == "cycle":
        return cycle(spec.n)
    if f == "complete":
        return complete(spec.n)
    if f == "torus-grid":
        return torus_grid(spec.n)
    if f == "bowtie":
        return bowtie()
    if f == "barbell":
        # n is the clique size, r the connecting path length (default 1)
        return barbell(spec.n, spec.r or 1)
    return petersen()
