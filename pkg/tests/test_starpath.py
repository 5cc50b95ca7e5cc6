import random

import pytest

from tinkit import (
    BudgetExceeded,
    Certificate,
    GraphError,
    SearchBudget,
    TreeDecomposition,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    find_induced_path_geq,
    find_induced_star,
    independence_number,
    make_graph,
    path_graph,
    starpath,
    validate,
)


def test_alpha_bound():
    assert starpath.alpha_bound(3, 5) == 6
    assert starpath.alpha_bound(4, 6) == 12
    assert starpath.alpha_bound(2, 3) == 1


def test_parameter_validation():
    g = path_graph(3)
    with pytest.raises(GraphError):
        starpath.decompose(g, 1, 5)
    with pytest.raises(GraphError):
        starpath.decompose(g, 3, 2)


def test_choose_entry():
    g = path_graph(4)
    assert starpath.choose_entry(g, [0, 2], {3}) == 2
    assert starpath.choose_entry(g, [2, 0], {1}) == 0
    with pytest.raises(GraphError):
        starpath.choose_entry(g, [0], {3})


def test_empty_graph():
    td = starpath.decompose(empty_graph(0), 3, 5)
    assert isinstance(td, TreeDecomposition)
    assert td.bags == (frozenset(),)


def test_clique_in_class():
    g = complete_graph(6)
    td = starpath.decompose(g, 3, 5)
    assert isinstance(td, TreeDecomposition)
    ok, why = validate(g, td)
    assert ok, why
    assert independence_number(g, td) == 1


def test_clique_union_in_class():
    g = disjoint_union(complete_graph(4), complete_graph(3))
    g = disjoint_union(g, complete_graph(5))
    td = starpath.decompose(g, 3, 5)
    assert isinstance(td, TreeDecomposition)
    ok, why = validate(g, td)
    assert ok, why
    assert td.coverage() == frozenset(range(g.n))
    assert independence_number(g, td) <= starpath.alpha_bound(3, 5)


def test_long_path_certificate():
    g = path_graph(5)
    cert = starpath.decompose(g, 3, 5)
    assert isinstance(cert, Certificate)
    assert cert.kind == "path" and len(cert.embedding) == 5
    assert cert.validated
    # one more vertex of headroom and the same graph decomposes
    td = starpath.decompose(g, 3, 6)
    assert isinstance(td, TreeDecomposition)
    ok, why = validate(g, td)
    assert ok, why


def test_cycle_yields_path_certificate():
    cert = starpath.decompose(cycle_graph(8), 3, 5)
    assert isinstance(cert, Certificate)
    assert cert.kind == "path" and len(cert.embedding) == 5


def test_big_star_certificate():
    g = complete_bipartite(1, 9)
    cert = starpath.decompose(g, 3, 5)
    assert isinstance(cert, Certificate)
    assert cert.kind == "star" and cert.params["leaves"] == 3
    assert cert.embedding[0] == 0


def test_random_in_class_graphs():
    rng = random.Random(20260822)
    for _ in range(60):
        sizes = [rng.randint(1, 5) for _ in range(rng.randint(1, 4))]
        g = complete_graph(sizes[0])
        for s in sizes[1:]:
            g = disjoint_union(g, complete_graph(s))
        assert find_induced_star(g, 3) is None
        assert find_induced_path_geq(g, 5) is None
        td = starpath.decompose(g, 3, 5)
        assert isinstance(td, TreeDecomposition)
        ok, why = validate(g, td)
        assert ok, why
        assert independence_number(g, td) <= 6


def test_random_graphs_always_answer():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(2, 14)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.25
        ]
        g = make_graph(n, edges)
        out = starpath.decompose(g, 3, 5)
        if isinstance(out, Certificate):
            assert out.kind in ("star", "path")
            assert out.validated
        else:
            ok, why = validate(g, out)
            assert ok, why
            assert independence_number(g, out) <= 6


def test_budget_exhaustion():
    with pytest.raises(BudgetExceeded):
        starpath.decompose(cycle_graph(30), 3, 5, budget=SearchBudget(2))
