import pytest
from hypothesis import given, settings, strategies as st

from eprocess import generators as G
from eprocess.graph import all_even_degree, is_connected, to_text


def _simple(g):
    pairs = [tuple(sorted(e)) for e in g.edges]
    return all(a != b for a, b in pairs) and len(set(pairs)) == len(pairs)


def test_degree_two_is_a_single_cycle():
    for seed in range(5):
        g = G.random_regular(6, 2, seed)
        assert set(g.degrees()) == {2} and is_connected(g) and g.m == 6


def test_n10_r4_simple_regular():
    g = G.random_regular(10, 4, seed=7)
    assert set(g.degrees()) == {4}
    assert _simple(g)


def test_n8_r7_is_k8():
    g = G.random_regular(8, 7, seed=1)
    assert g.m == 28 and _simple(g)


@pytest.mark.parametrize("n, r", [(7, 3), (4, 4), (5, 0)])
def test_infeasible_parameters(n, r):
    with pytest.raises(ValueError):
        G.random_regular(n, r, 0)


def test_retry_budget_reported():
    with pytest.raises(G.GenerationError, match="seed=5"):
        G.random_regular(10, 9, 5, max_attempts=0)


@settings(max_examples=30)
@given(st.sampled_from([(12, 3), (20, 4), (30, 6), (16, 5), (50, 4)]), st.integers(0, 2**63))
def test_random_regular_postconditions(nr, seed):
    n, r = nr
    g = G.random_regular(n, r, seed)
    assert set(g.degrees()) == {r}
    assert _simple(g)
    assert is_connected(g)
    if r % 2 == 0:
        assert all_even_degree(g)


@given(st.integers(0, 2**64 - 1))
def test_same_seed_same_bytes(seed):
    assert to_text(G.random_regular(40, 4, seed)) == to_text(G.random_regular(40, 4, seed))


def test_different_seeds_differ():
    assert to_text(G.random_regular(40, 4, 1)) != to_text(G.random_regular(40, 4, 2))


def test_sub_seeds_are_hierarchical_and_stable():
    a = G.sub_seeds(99, 3, 4, 1024)
    assert a == G.sub_seeds(99, 3, 4, 1024)
    assert a != G.sub_seeds(99, 3, 4, 2048)
    assert len(set(a)) == 3


def test_named_families():
    assert G.named(G.GenSpec("cycle", 5)).degrees() == [2] * 5
    assert G.named(G.GenSpec("bowtie")).degrees() == [4, 2, 2, 2, 2]
    t = G.named(G.GenSpec("torus-grid", 9))
    assert set(t.degrees()) == {4} and t.m == 18
    assert G.named(G.GenSpec("complete", 5)).m == 10
    p = G.named(G.GenSpec("petersen"))
    assert p.n == 10 and set(p.degrees()) == {3}
    b = G.named(G.GenSpec("barbell", 4, 3))
    assert b.n == 10 and is_connected(b)


def test_named_rejects_bad_parameters():
    with pytest.raises(ValueError, match="k\\^2"):
        G.torus_grid(10)
    with pytest.raises(ValueError):
        G.GenSpec("moebius", 5)
    with pytest.raises(ValueError):
        G.GenSpec("random-regular", 7, 3)
