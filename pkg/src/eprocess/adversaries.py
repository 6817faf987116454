"""Deterministic adversarial rules for choosing among unvisited edges.

Each adversary sees the current vertex, the blue edges on offer and the
full walk state, and must return one of the offered ids. None of them can
influence the random (red) steps.
"""
from __future__ import annotations

from .processes import CallbackRule, Rule, ScriptedAdversary, WalkState


def _head(st: WalkState, v: int, choice: int) -> int:
    g = st.graph
    if st.directed:
        a, b = g.edges[choice >> 1]
        return a if choice & 1 else b
    return g.other(choice, v)


def _by(key, name: str) -> CallbackRule:
    def pick(v, offers, st):
        return min(offers, key=lambda e: (key(st, _head(st, v, e)), e))

    return CallbackRule(pick, name)


def prefer_visited() -> CallbackRule:
    """Worst-first: steer the blue walk onto vertices it has already seen."""
    return _by(lambda st, w: (0 if st.visited[w] else 1), "prefer-visited")


def min_blue_degree() -> CallbackRule:
    """Worst-first: move to the neighbour with the fewest blue edges left,
    tending to leave isolated blue stars behind."""
    return _by(lambda st, w: st.blue_deg[w], "min-blue-degree")


def max_blue_degree() -> CallbackRule:
    return _by(lambda st, w: -st.blue_deg[w], "max-blue-degree")


def oldest_first() -> CallbackRule:
    """Head for the neighbour visited longest ago (unvisited ones last)."""
    big = float("inf")
    return _by(lambda st, w: st.first_visit[w] if st.first_visit[w] is not None else big, "oldest-first")


def newest_first() -> CallbackRule:
    """Head for the most recently discovered neighbour, unvisited ones last."""
    return _by(lambda st, w: -st.first_visit[w] if st.first_visit[w] is not None else 1, "newest-first")


def close_phase() -> CallbackRule:
    """Return to the blue phase's starting vertex as soon as possible."""
    return _by(lambda st, w: (0 if w == st.phase_vertex else 1, 0 if st.visited[w] else 1), "close-phase")


def lowest_label() -> CallbackRule:
    return _by(lambda st, w: w, "lowest-label")


def catalogue() -> dict[str, Rule]:
    """Ten fixed adversaries used for robustness comparisons."""
    return {
        "first": ScriptedAdversary(default="first"),
        "last": ScriptedAdversary(default="last"),
        "rotate": ScriptedAdversary(default="rotate"),
        "prefer-visited": prefer_visited(),
        "min-blue-degree": min_blue_degree(),
        "max-blue-degree": max_blue_degree(),
        "oldest-first": oldest_first(),
        "newest-first": newest_first(),
        "close-phase": close_phase(),
        "lowest-label": lowest_label(),
    }
