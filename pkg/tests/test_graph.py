import math

import pytest
from hypothesis import given, strategies as st

from eprocess import generators as G
from eprocess.graph import (
    GraphFormatError, all_even_degree, build, contract, girth, is_connected, parse_text, to_text,
)
from strategies import multigraphs


def test_build_triangle():
    g = build(3, [(0, 1), (1, 2), (2, 0)])
    assert g.degrees() == [2, 2, 2]
    assert g.m == 3


def test_build_loop_counts_twice():
    g = build(1, [(0, 0)])
    assert g.degree(0) == 2
    assert g.m == 1
    assert g.incident_edges(0) == [0]


def test_build_parallel_pair():
    g = build(2, [(0, 1), (0, 1)])
    assert g.degrees() == [2, 2]
    assert g.incident_edges(0) == [0, 1]


def test_build_rejects_out_of_range():
    with pytest.raises(ValueError, match="endpoint"):
        build(2, [(0, 2)])


@given(multigraphs())
def test_degree_sum_and_adjacency_consistency(g):
    assert sum(g.degrees()) == 2 * g.m
    seen = {}
    for v in range(g.n):
        for w, e in g.adj[v]:
            assert v in g.edges[e] and w == g.other(e, v)
            seen[e] = seen.get(e, 0) + 1
    assert all(seen.get(e, 0) == 2 for e in range(g.m))


@pytest.mark.parametrize(
    "g, expected",
    [
        (build(3, [(0, 1), (1, 2), (2, 0)]), True),
        (build(4, [(0, 1), (2, 3)]), False),
        (build(1, []), True),
        (build(0, []), True),
    ],
)
def test_is_connected(g, expected):
    assert is_connected(g) is expected


def test_all_even_degree():
    assert all_even_degree(G.cycle(3))
    assert not all_even_degree(build(3, [(0, 1), (1, 2)]))
    assert all_even_degree(G.random_regular(20, 4, seed=3))


def test_contract_triangle_pair():
    c = contract(G.cycle(3), {0, 1})
    h = c.graph
    assert h.n == 2 and h.m == 3
    assert h.degree(c.gamma) == 4
    assert h.loop_count(c.gamma) == 1
    other = c.vertex_map[2]
    assert sum(1 for a, b in h.edges if {a, b} == {c.gamma, other}) == 2


def test_contract_singleton_is_relabelling():
    g = G.petersen()
    c = contract(g, {4})
    h = c.graph
    assert h.n == g.n and h.m == g.m
    assert sorted(h.degrees()) == sorted(g.degrees())
    inv = {w: v for v, w in enumerate(c.vertex_map)}
    assert sorted(tuple(sorted((inv[a], inv[b]))) for a, b in h.edges) == sorted(
        tuple(sorted(e)) for e in g.edges
    )


def test_contract_c4_opposite():
    c = contract(G.cycle(4), {0, 2})
    h = c.graph
    assert (h.n, h.m) == (3, 4)
    assert all(a != b for a, b in h.edges)
    assert h.degree(c.gamma) == 4
    assert sum(h.degrees()) == 2 * 4


def test_contract_empty_rejected():
    with pytest.raises(ValueError):
        contract(G.cycle(4), set())


@given(multigraphs(min_n=2, connected=True), st.data())
def test_contract_preserves_edges_degrees_connectivity(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    c = contract(g, s)
    h = c.graph
    assert h.m == g.m
    assert sum(h.degrees()) == sum(g.degrees())
    assert h.degree(c.gamma) == g.set_degree(s)
    assert is_connected(h)
    for v, w in c.survivors.items():
        assert h.degree(w) == g.degree(v)


@pytest.mark.parametrize(
    "g, expected",
    [
        (G.cycle(3), 3),
        (build(4, [(0, 1), (1, 2), (1, 3)]), math.inf),
        (G.petersen(), 5),
        (build(1, [(0, 0)]), 1),
        (build(2, [(0, 1), (0, 1)]), 2),
        (G.torus_grid(16), 4),
        (G.complete(5), 3),
    ],
)
def test_girth(g, expected):
    assert girth(g) == expected


@given(multigraphs(min_n=1, max_n=7, max_m=10, loops=False))
def test_girth_matches_networkx(g):
    import networkx as nx

    simple = nx.Graph()
    simple.add_nodes_from(range(g.n))
    pairs = [tuple(sorted(e)) for e in g.edges]
    if len(set(pairs)) < len(pairs):
        assert girth(g) == 2
        return
    simple.add_edges_from(pairs)
    cycles = nx.minimum_cycle_basis(simple)
    expected = min((len(c) for c in cycles), default=math.inf)
    assert girth(g) == expected


@given(multigraphs())
def test_text_round_trip(g):
    h = parse_text(to_text(g))
    assert h == g
    assert h.edges == g.edges


@pytest.mark.parametrize(
    "text, line",
    [
        ("3\n", "line 1"),
        ("3 1\n0 x\n", "line 2"),
        ("3 2\n0 1\n1 2 3\n", "line 3"),
        ("3 1\n0 5\n", "line 2"),
    ],
)
def test_parse_errors_name_line(text, line):
    with pytest.raises(GraphFormatError, match=line):
        parse_text(text)


def test_parse_edge_count_mismatch():
    with pytest.raises(GraphFormatError, match="declares 2 edges"):
        parse_text("3 2\n0 1\n")
