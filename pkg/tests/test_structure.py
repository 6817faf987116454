import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eprocess import generators as G
from eprocess import structure as S
from eprocess.graph import build, girth

import oracles
from strategies import even_multigraphs


def _witness_ok(g, rep):
    es = rep.witness
    deg = {}
    for e in es:
        a, b = g.edges[e]
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    assert all(k > 0 and k % 2 == 0 for k in deg.values())
    assert set(g.incidence[rep.vertex]) <= es
    assert len(deg) == rep.ell
    _, connected = oracles._span_connected(g, sum(1 << e for e in es))
    assert connected


@pytest.mark.parametrize("n", range(3, 13))
def test_cycle_ell(n):
    rep = S.l_goodness(G.cycle(n), 0, cap=n)
    assert rep.ell == n
    _witness_ok(G.cycle(n), rep)
    assert oracles.even_subgraph_ell_bruteforce(G.cycle(n), 0) == n


def test_bowtie_centre_and_k5():
    assert S.l_goodness(G.bowtie(), 0, 10).ell == 5
    assert S.l_goodness(G.complete(5), 2, 10).ell == 5


def test_exceeds_cap():
    rep = S.l_goodness(G.cycle(9), 0, cap=5)
    assert rep.exceeds_cap and rep.lower_bound == 6 and rep.witness is None


def test_odd_root_rejected():
    with pytest.raises(S.StructureError):
        S.l_goodness(G.petersen(), 0, 10)
    with pytest.raises(S.StructureError):
        S.graph_l_good(G.petersen(), 10)


def test_torus_graph_goodness():
    g = G.torus_grid(16)
    res = S.graph_l_good(g, cap=10)
    assert res.ell == 7
    assert res.ell >= girth(g)
    assert oracles.even_subgraph_ell_cycle_space(g, 0) == 7


def test_graph_goodness_cycle_and_early_exit():
    assert S.graph_l_good(G.cycle(7), 10).ell == 7
    res = S.graph_l_good(G.bowtie(), 10, threshold=6)
    assert len(res.reports) == 1


def test_random_4_regular_totality():
    g = G.random_regular(60, 4, 5)
    res = S.graph_l_good(g, cap=8)
    assert len(res.reports) == g.n
    for rep in res.reports:
        assert rep.exceeds_cap or rep.ell <= 8
        # simple graph: the witness holds v and its four neighbours
        assert rep.lower_bound >= g.degree(rep.vertex) + 1


@settings(max_examples=60)
@given(even_multigraphs(max_n=6, max_cycles=3), st.data())
def test_goodness_matches_bitmask_oracle(g, data):
    if g.m > 20:
        return
    v = data.draw(st.integers(0, g.n - 1))
    rep = S.l_goodness(g, v, cap=g.n)
    assert rep.ell == oracles.even_subgraph_ell_bruteforce(g, v)
    _witness_ok(g, rep)
    assert rep.ell >= min(girth(g), g.n)


@pytest.mark.parametrize("n", range(3, 11))
def test_rooted_count_cycle(n):
    g = G.cycle(n)
    for s in range(1, n):
        assert S.count_rooted_subgraphs(g, 0, s) == s
        assert oracles.rooted_count_bruteforce(g, 0, s) == s


def test_rooted_count_examples():
    assert S.count_rooted_subgraphs(G.petersen(), 3, 1) == 1
    assert S.count_rooted_subgraphs(G.cycle(3), 0, 3) == 4
    assert S.count_rooted_subgraphs(G.complete(5), 0, 5) == 728


@pytest.mark.parametrize("g", [G.complete(5), G.petersen(), G.bowtie(), build(3, [(0, 1), (0, 1), (1, 2), (2, 2)])])
def test_rooted_count_matches_bruteforce(g):
    for s in range(1, min(g.n, 6) + 1):
        got = S.count_rooted_subgraphs(g, 0, s)
        assert got == oracles.rooted_count_bruteforce(g, 0, s)
        assert got <= 2 ** (s * g.max_degree)


def test_density_tree():
    tree = build(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    rep = S.density_check(tree, 5)
    assert all(rep.max_induced[s] == s - 1 for s in rep.max_induced)
    assert rep.worst_excess < 0


def test_density_k4():
    rep = S.density_check(G.complete(4), 4)
    assert rep.max_induced[4] == 6
    a = S.density_allowance(4, 4, 3)
    assert a == math.ceil(8 * math.log(3 * math.e) / math.log(4))
    assert rep.excess_threshold[4] == a


def test_density_counts_loops_at_s1():
    g = build(3, [(0, 0), (0, 1), (1, 2), (2, 0)])
    rep = S.density_check(g, 1)
    assert rep.max_induced[1] == 1


@given(st.integers(0, 10**6))
@settings(max_examples=15)
def test_density_matches_bruteforce(seed):
    import itertools

    g = G.random_regular(12, 3, seed)
    rep = S.density_check(g, 5)
    for s in range(1, 6):
        best = max(
            sum(1 for a, b in g.edges if a in c and b in c)
            for c in map(set, itertools.combinations(range(g.n), s))
        )
        assert rep.max_induced[s] == best


def test_density_sampling_mode_flags_probabilistic():
    g = G.random_regular(200, 4, 1)
    rep = S.density_check(g, 40, samples=5)
    assert rep.probabilistic
    with pytest.raises(S.StructureError):
        S.density_check(g, 40)


def test_p1_k5_and_cycle():
    rep = S.p1_check(G.complete(5), 4, 0.1)
    assert rep.lambda_2 == pytest.approx(-1) and rep.passed
    c = S.p1_check(G.cycle(8), 2, 0.1)
    assert c.lambda_2 == pytest.approx(2 * math.cos(2 * math.pi / 8)) and c.passed
    with pytest.raises(S.StructureError):
        S.p1_check(G.bowtie(), 4, 0.1)


def test_p1_sparse_path_matches_dense():
    g = G.random_regular(2400, 4, 3)
    lam = S.adjacency_second_eigenvalue(g)
    # cross-check against a dense solve on the same matrix
    A = np.zeros((g.n, g.n))
    for a, b in g.edges:
        A[a, b] += 1
        A[b, a] += 1
    assert lam == pytest.approx(np.linalg.eigvalsh(A)[-2], abs=1e-6)


def test_sparse_small_sets_imply_goodness():
    for seed in range(3):
        g = G.random_regular(400, 4, seed)
        s0 = S.density_threshold(g.n, 4)
        dens = S.density_check(g, max(s0, 1), r=4)
        passes = all(dens.max_induced[s] <= s for s in range(1, s0 + 1))
        if passes:
            res = S.graph_l_good(g, cap=s0 + 1 if s0 + 1 >= 5 else 5)
            assert res.ell == S.EXCEEDS_CAP or res.ell > s0
