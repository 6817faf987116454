"""Walk engine: the E-process, its directed-arc variant and the simple random walk.

Edges start blue (unvisited). When the walker's vertex has a blue edge, a
rule picks one and the walker crosses it, turning it red (a blue step).
Otherwise it moves along a uniformly random adjacency slot (a red step).
In the directed variant every edge carries two arcs, coloured independently,
and a blue step consumes one arc in its direction of travel.

Arc ids in the directed variant are ``2*e`` for the arc leaving the first
endpoint of edge ``e`` and ``2*e + 1`` for the reverse arc. A loop gives two
arcs from its vertex to itself.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .graph import Graph, all_even_degree, is_connected

BLUE, RED = "blue", "red"
PROCESSES = ("e", "e-directed", "srw")
STOPS = ("vertex", "edge")


class InvariantViolation(AssertionError):
    """An engine invariant failed; always a bug in the engine or its inputs."""


class RuleViolation(RuntimeError):
    """A rule returned something that was not on offer."""


class StepLimitExceeded(RuntimeError):
    def __init__(self, record: "TrialRecord"):
        super().__init__(
            f"step limit {record.steps} reached with {record.vertices_covered} vertices "
            f"and {record.edges_covered} edges covered"
        )
        self.record = record


# ---------------------------------------------------------------- state


@dataclass
class WalkState:
    graph: Graph
    start: int
    directed: bool = False
    position: int = 0
    t: int = 0
    t_R: int = 0
    t_B: int = 0
    phase: str | None = None
    phase_start: int = 0
    phase_vertex: int = 0
    # blue[i] is 1 while edge (or arc) i is unvisited
    blue: bytearray = field(default_factory=bytearray, repr=False)
    # blue slots at v: undirected counts loops twice, directed counts blue out-arcs
    blue_deg: list[int] = field(default_factory=list, repr=False)
    visited: bytearray = field(default_factory=bytearray, repr=False)
    first_visit: list = field(default_factory=list, repr=False)
    edge_seen: bytearray = field(default_factory=bytearray, repr=False)
    n_visited: int = 0
    n_edges_seen: int = 0

    @classmethod
    def fresh(cls, g: Graph, start: int, directed: bool = False) -> "WalkState":
        if not 0 <= start < g.n:
            raise ValueError(f"start vertex {start} not in graph")
        if directed:
            blue = bytearray(b"\x01") * (2 * g.m)
        else:
            blue = bytearray(b"\x01") * g.m
        visited = bytearray(g.n)
        visited[start] = 1
        first = [None] * g.n
        first[start] = 0
        return cls(
            graph=g,
            start=start,
            directed=directed,
            position=start,
            phase_vertex=start,
            blue=blue,
            blue_deg=g.degrees(),
            visited=visited,
            first_visit=first,
            edge_seen=bytearray(g.m),
            n_visited=1,
        )

    def is_blue(self, e: int) -> bool:
        """Undirected edge colour (directed: blue while both arcs are blue)."""
        if self.directed:
            return bool(self.blue[2 * e] and self.blue[2 * e + 1])
        return bool(self.blue[e])

    def blue_offers(self, v: int | None = None) -> list[int]:
        """Blue edge ids (arc ids when directed) leaving v, in adjacency order."""
        v = self.position if v is None else v
        return _offers(self.graph, self.blue, v, self.directed)

    @property
    def covered(self) -> bool:
        return self.n_visited == self.graph.n


def _offers(g: Graph, blue: bytearray, v: int, directed: bool) -> list[int]:
    if not directed:
        return [e for e in g.incident_edges(v) if blue[e]]
    out = []
    for e in g.incident_edges(v):
        a, b = g.edges[e]
        if a == b:
            if blue[2 * e]:
                out.append(2 * e)
            if blue[2 * e + 1]:
                out.append(2 * e + 1)
        elif a == v:
            if blue[2 * e]:
                out.append(2 * e)
        elif blue[2 * e + 1]:
            out.append(2 * e + 1)
    return out


def _arc_head(g: Graph, arc: int) -> int:
    a, b = g.edges[arc >> 1]
    return a if arc & 1 else b


# ---------------------------------------------------------------- rules


class Rule:
    """Chooses among the blue edges (or arcs) on offer at the current vertex."""

    kind = "abstract"

    def choose(self, v: int, offers: Sequence[int], state: WalkState, rng: random.Random) -> int:
        raise NotImplementedError

    def reset(self, g: Graph) -> None:
        """Prepare per-trial state; called by ``run`` before the first step."""


class UniformRule(Rule):
    kind = "uniform"

    def choose(self, v, offers, state, rng):
        return offers[int(rng.random() * len(offers))]


class FixedOrderRule(Rule):
    """Rotor order: each vertex cycles through its edges in a fixed order,
    resuming after the edge it used last and skipping red ones.

    ``order`` maps a vertex to a permutation of its incident edge ids; missing
    vertices use adjacency order, or a seeded shuffle when ``seed`` is given.
    """

    kind = "fixed"

    def __init__(self, order: dict[int, Sequence[int]] | None = None, seed: int | None = None):
        self.order = dict(order or {})
        self.seed = seed
        self.reset(None)

    def reset(self, g):
        self._pointer = {}
        self._table = {}
        self._rng = random.Random(self.seed) if self.seed is not None else None

    def _order_at(self, v, state):
        table = self._table.get(v)
        if table is None:
            if v in self.order:
                table = list(self.order[v])
            else:
                table = state.graph.incident_edges(v)
                if state.directed:
                    table = [a for e in table for a in (2 * e, 2 * e + 1)]
                if self._rng is not None:
                    self._rng.shuffle(table)
            self._table[v] = table
        return table

    def choose(self, v, offers, state, rng):
        table = self._order_at(v, state)
        offered = set(offers)
        k = len(table)
        p = self._pointer.get(v, 0)
        for i in range(k):
            cand = table[(p + i) % k]
            if cand in offered:
                self._pointer[v] = (p + i + 1) % k
                return cand
        # the table did not mention what is on offer
        return offers[0]


class RoundRobinRule(Rule):
    """The k-th blue departure from a vertex takes offer index k mod len(offers)."""

    kind = "round-robin"

    def __init__(self):
        self._count: dict[int, int] = {}

    def reset(self, g):
        self._count = {}

    def choose(self, v, offers, state, rng):
        k = self._count.get(v, 0)
        self._count[v] = k + 1
        return offers[k % len(offers)]


class CallbackRule(Rule):
    """Adversary given by a function ``(v, offers, state) -> offered id``."""

    kind = "adversary"

    def __init__(self, fn: Callable[[int, Sequence[int], WalkState], int], name: str = "callback"):
        self.fn = fn
        self.name = name

    def choose(self, v, offers, state, rng):
        return self.fn(v, offers, state)


class ScriptedAdversary(Rule):
    """Deterministic adversary replaying ``{step: offer index}`` decisions.

    Steps not in the script use ``default``: ``first``, ``last`` or ``rotate``
    (index ``t mod len(offers)``).
    """

    kind = "adversary"
    DEFAULTS = ("first", "last", "rotate")

    def __init__(self, script: dict[int, int] | None = None, default: str = "first"):
        if default not in self.DEFAULTS:
            raise ValueError(f"default policy must be one of {self.DEFAULTS}")
        self.script = dict(script or {})
        self.default = default

    @classmethod
    def parse(cls, text: str) -> "ScriptedAdversary":
        """Parse lines ``<step> <index>``; ``default <policy>`` sets the fallback.

        Blank lines and ``#`` comments are ignored.
        """
        script: dict[int, int] = {}
        default = "first"
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if parts[0] == "default" and len(parts) == 2:
                default = parts[1]
                continue
            if len(parts) != 2:
                raise ValueError(f"adversary script line {lineno}: expected '<step> <index>'")
            try:
                step, idx = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"adversary script line {lineno}: non-integer entry") from None
            if step < 0 or idx < 0:
                raise ValueError(f"adversary script line {lineno}: negative entry")
            script[step] = idx
        return cls(script, default)

    def choose(self, v, offers, state, rng):
        idx = self.script.get(state.t)
        if idx is None:
            if self.default == "first":
                idx = 0
            elif self.default == "last":
                idx = len(offers) - 1
            else:
                idx = state.t % len(offers)
        if idx >= len(offers):
            raise RuleViolation(
                f"script picks offer index {idx} at step {state.t} but only {len(offers)} on offer"
            )
        return offers[idx]


def make_rule(spec: str, seed: int | None = None) -> Rule:
    """Rule from a CLI name: uniform, fixed, round-robin, adversary:<file>."""
    if spec == "uniform":
        return UniformRule()
    if spec == "fixed":
        return FixedOrderRule(seed=seed)
    if spec == "round-robin":
        return RoundRobinRule()
    if spec.startswith("adversary:"):
        with open(spec.split(":", 1)[1]) as fh:
            return ScriptedAdversary.parse(fh.read())
    raise ValueError(f"unknown rule {spec!r}")


# ---------------------------------------------------------------- records


class Phase(NamedTuple):
    kind: str
    start: int
    vertex: int
    length: int
    end_vertex: int
    complete: bool


@dataclass
class TrialRecord:
    process: str
    rule: str
    seed: int
    start: int
    n: int
    m: int
    vertex_cover_time: int | None
    edge_cover_time: int | None
    t_R_at_cover: int
    t_B_at_cover: int
    steps: int
    vertices_covered: int
    edges_covered: int
    timed_out: bool
    phase_log: list[Phase] = field(default_factory=list)
    path: list[int] | None = None
    kinds: bytearray | None = None

    def blue_phases(self) -> list[Phase]:
        return [p for p in self.phase_log if p.kind == BLUE]

    def to_dict(self, with_phases: bool = True) -> dict:
        d = asdict(self)
        d.pop("path")
        d.pop("kinds")
        if with_phases:
            d["phase_log"] = [list(p) for p in self.phase_log]
        else:
            d.pop("phase_log")
        return d


def default_max_steps(n: int, process: str) -> int:
    ln = math.log(max(n, 2))
    if process == "srw":
        return max(1000, int(50 * n * ln))
    return max(1000, int(50 * (n + n * ln)))


# ---------------------------------------------------------------- stepping


def e_step(st: WalkState, rule: Rule, rng: random.Random) -> str:
    """Advance one step of the E-process (directed if ``st.directed``).

    Returns the step kind, ``"blue"`` or ``"red"``.
    """
    g = st.graph
    v = st.position
    if st.blue_deg[v]:
        if st.phase != BLUE:
            st.phase, st.phase_start, st.phase_vertex = BLUE, st.t, v
        offers = st.blue_offers(v)
        choice = rule.choose(v, offers, st, rng)
        if choice not in offers:
            raise RuleViolation(f"rule chose {choice} at step {st.t}; offers were {offers}")
        if st.directed:
            w = _arc_head(g, choice)
            st.blue[choice] = 0
            st.blue_deg[v] -= 1
            e = choice >> 1
        else:
            e = choice
            w = g.other(e, v)
            st.blue[e] = 0
            st.blue_deg[v] -= 1
            st.blue_deg[w] -= 1
        st.t_B += 1
        kind = BLUE
    else:
        nbrs = g.adj[v]
        w, e = nbrs[int(rng.random() * len(nbrs))]
        st.t_R += 1
        kind = RED
    _arrive(st, v, w, e, kind)
    return kind


def srw_step(st: WalkState, rng: random.Random) -> str:
    g = st.graph
    v = st.position
    nbrs = g.adj[v]
    w, e = nbrs[int(rng.random() * len(nbrs))]
    if st.blue[e]:
        st.blue[e] = 0
        if v == w:
            st.blue_deg[v] -= 2
        else:
            st.blue_deg[v] -= 1
            st.blue_deg[w] -= 1
    st.t_R += 1
    _arrive(st, v, w, e, RED)
    return RED


def _arrive(st: WalkState, v: int, w: int, e: int, kind: str) -> None:
    st.t += 1
    if st.phase != kind:
        st.phase = kind
        st.phase_start = st.t - 1
        st.phase_vertex = v
    st.position = w
    if not st.edge_seen[e]:
        st.edge_seen[e] = 1
        st.n_edges_seen += 1
    if not st.visited[w]:
        st.visited[w] = 1
        st.first_visit[w] = st.t
        st.n_visited += 1


# ---------------------------------------------------------------- trials


def run(
    g: Graph,
    start: int = 0,
    rule: Rule | None = None,
    seed: int = 0,
    max_steps: int | None = None,
    stop: str = "vertex",
    check: bool = False,
    trace: bool = False,
    raise_on_timeout: bool = False,
) -> TrialRecord:
    """One E-process trial from an all-blue start."""
    return _run(g, start, rule, seed, max_steps, stop, check, trace, raise_on_timeout, "e")


def run_directed(
    g: Graph,
    start: int = 0,
    rule: Rule | None = None,
    seed: int = 0,
    max_steps: int | None = None,
    stop: str = "vertex",
    check: bool = False,
    trace: bool = False,
    raise_on_timeout: bool = False,
) -> TrialRecord:
    """Directed-arc E-process; ``stop="edge"`` waits for every arc."""
    return _run(g, start, rule, seed, max_steps, stop, check, trace, raise_on_timeout, "e-directed")


def simple_walk(
    g: Graph,
    start: int = 0,
    seed: int = 0,
    max_steps: int | None = None,
    stop: str = "vertex",
    trace: bool = False,
    raise_on_timeout: bool = False,
) -> TrialRecord:
    return _run(g, start, None, seed, max_steps, stop, False, trace, raise_on_timeout, "srw")


def run_process(g: Graph, process: str, **kw) -> TrialRecord:
    if process == "e":
        return run(g, **kw)
    if process == "e-directed":
        return run_directed(g, **kw)
    if process == "srw":
        kw.pop("rule", None)
        kw.pop("check", None)
        return simple_walk(g, **kw)
    raise ValueError(f"unknown process {process!r}; choose from {PROCESSES}")


def _run(g, start, rule, seed, max_steps, stop, check, trace, raise_on_timeout, process):
    if stop not in STOPS:
        raise ValueError(f"stop must be one of {STOPS}")
    if not is_connected(g):
        raise ValueError("walks need a connected graph")
    directed = process == "e-directed"
    srw = process == "srw"
    if rule is None:
        rule = UniformRule()
    rule.reset(g)
    if max_steps is None:
        max_steps = default_max_steps(g.n, process)
    st = WalkState.fresh(g, start, directed)
    rng = random.Random(seed)
    parity = check and not srw and (directed or all_even_degree(g))
    checker = _Checker(st) if check and not srw else None

    # local aliases for the hot loop
    adj = g.adj
    edges = g.edges
    blue = st.blue
    blue_deg = st.blue_deg
    visited = st.visited
    first_visit = st.first_visit
    edge_seen = st.edge_seen
    rand = rng.random
    uniform = type(rule) is UniformRule
    n, m = g.n, g.m
    edge_target = 2 * m if directed else m
    v = start
    t = t_R = t_B = 0
    n_visited = 1
    n_edges = 0
    blue_edges_left = edge_target
    vertex_cover = 0 if n_visited == n else None
    edge_cover = 0 if edge_target == 0 else None
    cover_split = (0, 0)
    phases: list[Phase] = []
    cur_kind = None
    cur_start = 0
    cur_vertex = start
    path = [start] if trace else None
    kinds = bytearray() if trace else None

    inc = g.incidence
    stop_vertex = stop == "vertex"
    finished = vertex_cover is not None if stop_vertex else edge_cover is not None

    while not finished and t < max_steps:
        if not srw and blue_deg[v]:
            if uniform and not directed:
                offers = [e for e in inc[v] if blue[e]]
                choice = offers[int(rand() * len(offers))]
            else:
                offers = _offers(g, blue, v, directed)
                st.position, st.t, st.t_R, st.t_B = v, t, t_R, t_B
                st.n_visited, st.n_edges_seen = n_visited, n_edges
                st.phase = BLUE
                if cur_kind is BLUE:
                    st.phase_start, st.phase_vertex = cur_start, cur_vertex
                else:
                    st.phase_start, st.phase_vertex = t, v
                choice = rule.choose(v, offers, st, rng)
                if choice not in offers:
                    raise RuleViolation(f"rule chose {choice} at step {t}; offers were {offers}")
            if directed:
                e = choice >> 1
                a, b = edges[e]
                w = a if choice & 1 else b
                blue[choice] = 0
                blue_deg[v] -= 1
            else:
                e = choice
                a, b = edges[e]
                w = b if a == v else a
                blue[e] = 0
                blue_deg[v] -= 1
                blue_deg[w] -= 1
            blue_edges_left -= 1
            t_B += 1
            kind = BLUE
        else:
            nbrs = adj[v]
            w, e = nbrs[int(rand() * len(nbrs))]
            if srw and blue[e]:
                blue[e] = 0
                blue_edges_left -= 1
                if v == w:
                    blue_deg[v] -= 2
                else:
                    blue_deg[v] -= 1
                    blue_deg[w] -= 1
            t_R += 1
            kind = RED
        t += 1
        if kind is not cur_kind:
            if cur_kind is not None:
                phases.append(Phase(cur_kind, cur_start, cur_vertex, t - 1 - cur_start, v, True))
            cur_kind, cur_start, cur_vertex = kind, t - 1, v
        v = w
        if not edge_seen[e]:
            edge_seen[e] = 1
            n_edges += 1
        if not visited[w]:
            visited[w] = 1
            first_visit[w] = t
            n_visited += 1
            if n_visited == n:
                vertex_cover = t
                if stop_vertex:
                    cover_split = (t_R, t_B)
                    finished = True
        if edge_cover is None and (n_edges == m if srw else blue_edges_left == 0):
            edge_cover = t
            if not stop_vertex:
                cover_split = (t_R, t_B)
                finished = True
        if trace:
            path.append(w)
            kinds.append(kind is BLUE)
        if checker is not None:
            checker.step(v, kind, cur_vertex, t, t_R, t_B, parity)

    if cur_kind is not None:
        phases.append(Phase(cur_kind, cur_start, cur_vertex, t - cur_start, v, False))
    st.position, st.t, st.t_R, st.t_B = v, t, t_R, t_B
    st.phase = cur_kind
    st.phase_start, st.phase_vertex = cur_start, cur_vertex
    st.n_visited, st.n_edges_seen = n_visited, n_edges
    timed_out = not finished
    if timed_out:
        cover_split = (t_R, t_B)
    rec = TrialRecord(
        process=process,
        rule="none" if srw else rule.kind,
        seed=seed,
        start=start,
        n=n,
        m=m,
        vertex_cover_time=vertex_cover,
        edge_cover_time=edge_cover,
        t_R_at_cover=cover_split[0],
        t_B_at_cover=cover_split[1],
        steps=t,
        vertices_covered=n_visited,
        edges_covered=edge_target - blue_edges_left if not srw else n_edges,
        timed_out=timed_out,
        phase_log=phases,
        path=path,
        kinds=kinds,
    )
    if timed_out and raise_on_timeout:
        raise StepLimitExceeded(rec)
    return rec


class _Checker:
    """Per-step invariant checks.

    Tracks the set of vertices with odd blue degree (undirected) or non-zero
    blue out/in imbalance (directed). Starting from an even-degree graph (or
    any graph in the directed case) that set is empty during red phases and
    equals {current vertex, phase start} during blue phases.
    """

    def __init__(self, st: WalkState):
        self.st = st
        g = st.graph
        self.budget = 2 * g.m if st.directed else g.m
        self.balance = [0] * g.n
        self.odd: set[int] = set()
        self.prev = st.position

    def step(self, v, kind, phase_vertex, t, t_R, t_B, parity):
        st = self.st
        if t != t_R + t_B:
            raise InvariantViolation(f"t={t} != t_R + t_B = {t_R} + {t_B}")
        if not (t_R <= t <= t_R + self.budget):
            raise InvariantViolation(f"arc budget broken at t={t}: t_R={t_R}, budget={self.budget}")
        u = self.prev
        self.prev = v
        if not parity:
            return
        if kind is BLUE and u != v:
            if st.directed:
                for x, dlt in ((u, -1), (v, 1)):
                    self.balance[x] += dlt
                    if self.balance[x]:
                        self.odd.add(x)
                    else:
                        self.odd.discard(x)
            else:
                self.odd ^= {u, v}
        if kind is RED:
            if self.odd:
                raise InvariantViolation(
                    f"red step at t={t} with unbalanced blue degree at {sorted(self.odd)[:5]}"
                )
        else:
            expect = set() if v == phase_vertex else {v, phase_vertex}
            if self.odd != expect:
                raise InvariantViolation(
                    f"blue phase from {phase_vertex} at t={t}, position {v}: "
                    f"odd set {sorted(self.odd)[:5]} != {sorted(expect)}"
                )
        if kind is BLUE and st.blue_deg[v] == 0 and v != phase_vertex:
            raise InvariantViolation(f"blue phase from {phase_vertex} stuck at {v} (t={t})")


def check_phase_closure(rec: TrialRecord) -> list[Phase]:
    """Completed blue phases that did not end where they began."""
    return [p for p in rec.phase_log if p.kind == BLUE and p.complete and p.end_vertex != p.vertex]


# ---------------------------------------------------------------- S*_v


@dataclass(frozen=True)
class StarReport:
    vertex: int
    vertices: frozenset[int]
    edges: frozenset[int]


def check_unvisited_star(st: WalkState, v: int) -> StarReport:
    """Blue component S*_v around an unvisited vertex during a red phase.

    Checks that every edge at v is blue, every vertex of S*_v has positive
    even blue degree inside it, and every edge leaving its vertex set is red.
    """
    if st.directed:
        raise ValueError("S*_v is defined for the undirected process")
    if st.visited[v]:
        raise ValueError(f"vertex {v} has already been visited")
    if st.phase == BLUE:
        raise ValueError("S*_v is only examined during a red phase")
    g = st.graph
    for _, e in g.adj[v]:
        if not st.blue[e]:
            raise InvariantViolation(f"unvisited vertex {v} has red edge {e}")
    verts = {v}
    sub_edges: set[int] = set()
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y, e in g.adj[x]:
            if st.blue[e]:
                sub_edges.add(e)
                if y not in verts:
                    verts.add(y)
                    queue.append(y)
    deg = dict.fromkeys(verts, 0)
    for e in sub_edges:
        a, b = g.edges[e]
        deg[a] += 1
        deg[b] += 1
    for x, d in deg.items():
        if d <= 0 or d % 2:
            raise InvariantViolation(f"S*_{v}: vertex {x} has blue degree {d}")
    for x in verts:
        for y, e in g.adj[x]:
            if e not in sub_edges and st.blue[e]:
                raise InvariantViolation(f"S*_{v}: blue edge {e} leaves the component")
    return StarReport(v, frozenset(verts), frozenset(sub_edges))


# ---------------------------------------------------------------- return times


def return_times(g: Graph, u: int, count: int, seed: int = 0, walkers: int | None = None) -> np.ndarray:
    """Simulated first-return times of the simple random walk to ``u``.

    Independent walkers run in lockstep and each contributes exactly its
    first ``ceil(count / walkers)`` excursions, so no walker's sample is
    biased towards short excursions. The first ``count`` are returned.
    """
    if not is_connected(g):
        raise ValueError("return times need a connected graph")
    deg = np.array(g.degrees())
    offs = np.concatenate([[0], np.cumsum(deg)[:-1]])
    flat = np.array([w for a in g.adj for w, _ in a])
    k = walkers or max(1, min(500, count // 200))
    quota = -(-count // k)
    rng = np.random.default_rng(seed)
    pos = np.full(k, u)
    last = np.zeros(k, dtype=np.int64)
    got = np.zeros(k, dtype=np.int64)
    out = np.zeros((k, quota), dtype=np.int64)
    active = np.arange(k)
    t = 0
    while active.size:
        t += 1
        p = pos[active]
        p = flat[offs[p] + (rng.random(active.size) * deg[p]).astype(np.int64)]
        pos[active] = p
        hit = active[p == u]
        if hit.size:
            out[hit, got[hit]] = t - last[hit]
            last[hit] = t
            got[hit] += 1
            active = active[got[active] < quota]
    return out.T.reshape(-1)[:count]
