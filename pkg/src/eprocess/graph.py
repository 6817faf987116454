"""Undirected multigraphs with stable edge ids.

Loops and parallel edges are allowed. A loop contributes 2 to the degree of
its vertex and appears twice in that vertex's adjacency list, so a uniform
choice over adjacency slots is the simple random walk transition.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Raised for malformed edge-list text."""


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    # adj[v] lists (neighbour, edge id) slots; a loop at v occupies two slots
    adj: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Distinct edge ids per vertex in adjacency order (a loop listed once)."""
        out = []
        for slots in self.adj:
            ids = []
            last = None
            for _, e in slots:
                # the two slots of a loop are adjacent by construction
                if e != last:
                    ids.append(e)
                last = e
            out.append(tuple(ids))
        return tuple(out)

    def incident_edges(self, v: int) -> list[int]:
        return list(self.incidence[v])

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def set_degree(self, s: Iterable[int]) -> int:
        return sum(len(self.adj[v]) for v in s)

    def loop_count(self, v: int) -> int:
        return sum(1 for a, b in self.edges if a == b == v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def to_networkx(self):
        import networkx as nx

        h = nx.MultiGraph()
        h.add_nodes_from(range(self.n))
        for e, (a, b) in enumerate(self.edges):
            h.add_edge(a, b, key=e)
        return h


def build(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Build a multigraph on vertices 0..n-1; edge ids follow input order."""
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    edges = []
    slots: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e, pair in enumerate(edge_list):
        a, b = int(pair[0]), int(pair[1])
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"edge {e} = ({a}, {b}) has an endpoint outside 0..{n - 1}")
        edges.append((a, b))
        if a == b:
            slots[a].append((a, e))
            slots[a].append((a, e))
        else:
            slots[a].append((b, e))
            slots[b].append((a, e))
    return Graph(n, tuple(edges), tuple(tuple(s) for s in slots))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(_component(g, 0)) == g.n


def _component(g: Graph, root: int) -> set[int]:
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w, _ in g.adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def all_even_degree(g: Graph) -> bool:
    return all(len(a) % 2 == 0 for a in g.adj)


@dataclass(frozen=True)
class Contraction:
    graph: Graph
    gamma: int
    # vertex_map[v] is v's id in the contracted graph (members of S map to gamma)
    vertex_map: tuple[int, ...]

    @property
    def survivors(self) -> dict[int, int]:
        return {v: w for v, w in enumerate(self.vertex_map) if w != self.gamma}


def contract(g: Graph, s: Iterable[int]) -> Contraction:
    """Merge the vertex set ``s`` into one vertex.

    Edge ids are preserved: edge e of the result is the image of edge e of g.
    The merged vertex gets id 0 and the remaining vertices keep their
    relative order.
    """
    members = set(s)
    if not members:
        raise ValueError("cannot contract an empty vertex set")
    bad = [v for v in members if not 0 <= v < g.n]
    if bad:
        raise ValueError(f"vertices {sorted(bad)} not in graph")
    vmap = [0] * g.n
    nxt = 1
    for v in range(g.n):
        if v not in members:
            vmap[v] = nxt
            nxt += 1
    edges = [(vmap[a], vmap[b]) for a, b in g.edges]
    return Contraction(build(nxt, edges), 0, tuple(vmap))


def girth(g: Graph) -> float:
    """Shortest cycle length; loops have length 1, parallel pairs length 2."""
    best = math.inf
    for a, b in g.edges:
        if a == b:
            return 1
    seen_pairs = set()
    for a, b in g.edges:
        key = (min(a, b), max(a, b))
        if key in seen_pairs:
            best = 2
            break
        seen_pairs.add(key)
    if best == 2:
        return 2
    # simple graph from here: BFS from every root, a non-tree edge closes a cycle
    for root in range(g.n):
        dist = {root: 0}
        parent_edge = {root: -1}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w, e in g.adj[v]:
                if e == parent_edge[v]:
                    continue
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent_edge[w] = e
                    queue.append(w)
                else:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{a} {b}" for a, b in g.edges)
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("line 1: empty input, expected 'n m'")
    header = lines[0].split()
    if len(header) != 2:
        raise GraphFormatError(f"line 1: expected 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError(f"line 1: non-integer header {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise GraphFormatError("line 1: n and m must be non-negative")
    body = [(i + 2, ln) for i, ln in enumerate(lines[1:]) if ln.strip()]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges but found {len(body)} edge lines")
    edges = []
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {ln!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer endpoint in {ln!r}") from None
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"line {lineno}: endpoint out of range 0..{n - 1}")
        edges.append((a, b))
    return build(n, edges)


def read_graph(path: str | Path) -> Graph:
    return parse_text(Path(path).read_text())


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(to_text(g))
