import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tinkit import (
    BudgetExceeded,
    GraphError,
    SearchBudget,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    join,
    line_graph,
    make_graph,
    oracle,
    path_graph,
)


def test_alpha_known_values():
    assert oracle.alpha_exact(empty_graph(5)) == 5
    assert oracle.alpha_exact(complete_graph(6)) == 1
    assert oracle.alpha_exact(cycle_graph(5)) == 2
    assert oracle.alpha_exact(cycle_graph(8)) == 4
    assert oracle.alpha_exact(path_graph(7)) == 4
    assert oracle.alpha_exact(complete_bipartite(3, 4)) == 4
    assert oracle.alpha_exact(empty_graph(0)) == 0


def test_alpha_within_forms():
    g = cycle_graph(6)
    assert oracle.alpha_exact(g, within=[0, 1, 2]) == 2
    assert oracle.alpha_exact(g, within=0b000111) == 2
    assert oracle.alpha_exact(g, within=[]) == 0


def test_max_independent_set_is_maximum_and_independent():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 10)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
        g = make_graph(n, edges)
        s = oracle.max_independent_set(g)
        assert len(s) == oracle.alpha_exact(g)
        for u, v in itertools.combinations(sorted(s), 2):
            assert not g.has_edge(u, v)


def test_independent_set_of_size():
    g = cycle_graph(6)
    s = oracle.independent_set_of_size(g, 3)
    assert s is not None and len(s) == 3
    assert oracle.independent_set_of_size(g, 4) is None
    assert oracle.independent_set_of_size(g, 0) == set()


def test_enumerate_independent_sets_order():
    g = path_graph(3)
    got = list(oracle.enumerate_independent_sets(g, [0, 1, 2]))
    # bitsets, empty first, then by sorted vertex tuple
    assert got == [0, 0b001, 0b101, 0b010, 0b100]
    # within as a mask behaves the same
    assert list(oracle.enumerate_independent_sets(g, 0b111)) == got


def test_tin_frozen_values():
    for k in range(4, 9):
        assert oracle.tin_exact(cycle_graph(k)) == 2
    for k in range(1, 9):
        assert oracle.tin_exact(path_graph(k)) == 1
    assert oracle.tin_exact(complete_graph(5)) == 1
    assert oracle.tin_exact(complete_bipartite(2, 3)) == 2
    assert oracle.tin_exact(complete_bipartite(3, 3)) == 3
    assert oracle.tin_exact(empty_graph(4)) == 1
    assert oracle.tin_exact(empty_graph(0)) == 0
    lk5, _ = line_graph(complete_graph(5))
    assert oracle.tin_exact(lk5) == 2


def test_tin_disjoint_union_is_max():
    g = disjoint_union(cycle_graph(5), complete_bipartite(3, 3))
    assert oracle.tin_exact(g) == 3
    assert oracle.tin_exact(join(path_graph(3), path_graph(3))) == 2


def test_tin_ordering_witness():
    g = cycle_graph(6)
    val, order = oracle.tin_exact(g, with_ordering=True)
    assert val == 2
    assert sorted(order) == list(range(6))


def test_tw_frozen_values():
    assert oracle.tw_exact(cycle_graph(4)) == 2
    assert oracle.tw_exact(cycle_graph(6)) == 2
    assert oracle.tw_exact(complete_graph(5)) == 4
    assert oracle.tw_exact(path_graph(6)) == 1
    assert oracle.tw_exact(complete_bipartite(3, 3)) == 3
    assert oracle.tw_exact(empty_graph(3)) == 0
    assert oracle.tw_exact(empty_graph(0)) == -1


def test_size_guards():
    big = empty_graph(12)
    with pytest.raises(GraphError):
        oracle.tin_exact(big)
    with pytest.raises(GraphError):
        oracle.tw_exact(big)
    # explicit opt-in raises the ceiling
    assert oracle.tin_exact(big, max_n=12) == 1
    with pytest.raises(GraphError):
        oracle.mwis_exact(empty_graph(27), [1] * 27)


def test_budget_exhaustion():
    g = cycle_graph(9)
    with pytest.raises(BudgetExceeded):
        oracle.tin_exact(g, budget=SearchBudget(5))


def test_ibn_frozen_values():
    assert oracle.ibn_exact(path_graph(4)) == 1
    assert oracle.ibn_exact(cycle_graph(5)) == 1
    assert oracle.ibn_exact(cycle_graph(6)) == 1
    assert oracle.ibn_exact(complete_bipartite(3, 3)) == 3
    assert oracle.ibn_exact(complete_graph(5)) == 1
    assert oracle.ibn_exact(empty_graph(4)) == 0
    k, witness = oracle.ibn_exact(complete_bipartite(3, 3), with_witness=True)
    assert k == 3
    side_a, side_b = witness
    g = complete_bipartite(3, 3)
    for u in side_a:
        for v in side_b:
            assert g.has_edge(u, v)
    for side in (side_a, side_b):
        for u, v in itertools.combinations(sorted(side), 2):
            assert not g.has_edge(u, v)


def test_mwis_known():
    g = cycle_graph(5)
    w = [Fraction(k) for k in (1, 2, 3, 4, 5)]
    total, chosen = oracle.mwis_exact(g, w)
    assert total == Fraction(8)
    assert chosen == {2, 4}
    # nonpositive weights are never forced in
    total, chosen = oracle.mwis_exact(g, [Fraction(-1)] * 5)
    assert total == 0 and chosen == set()


def test_mwis_against_subset_enumeration():
    rng = random.Random(17)
    for _ in range(25):
        n = rng.randint(1, 9)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.35]
        g = make_graph(n, edges)
        w = [Fraction(rng.randint(-3, 9), rng.randint(1, 4)) for _ in range(n)]
        best = Fraction(0)
        for r in range(n + 1):
            for sub in itertools.combinations(range(n), r):
                if any(g.has_edge(u, v) for u, v in itertools.combinations(sub, 2)):
                    continue
                best = max(best, sum((w[v] for v in sub), Fraction(0)))
        total, chosen = oracle.mwis_exact(g, w)
        assert total == best
        assert sum((w[v] for v in chosen), Fraction(0)) == total
        for u, v in itertools.combinations(sorted(chosen), 2):
            assert not g.has_edge(u, v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**15 - 1))
def test_tin_sandwich(bitmask):
    # all graphs on 6 vertices, edges decoded from the mask
    pairs = list(itertools.combinations(range(6), 2))
    edges = [pairs[t] for t in range(15) if bitmask >> t & 1]
    g = make_graph(6, edges)
    tin = oracle.tin_exact(g)
    if g.n and g.edge_count == 0:
        assert tin == 1
        return
    assert max(oracle.ibn_exact(g), 1) <= tin
    assert tin <= min(oracle.alpha_exact(g), oracle.tw_exact(g) + 1)
