import random

import pytest

from tinkit import (
    BudgetExceeded,
    Certificate,
    GraphError,
    SearchBudget,
    TreeDecomposition,
    cograph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    independence_number,
    join,
    make_graph,
    oracle,
    path_graph,
    validate,
)
from tinkit.cograph import (
    build_cotree,
    cotree_from_json,
    cotree_to_json,
    decompose_cograph,
    find_p4,
    random_cograph,
    tin_cograph,
)

from catalog import by_order


def test_find_p4():
    assert find_p4(path_graph(4)) == [0, 1, 2, 3]
    assert find_p4(cycle_graph(4)) is None
    assert find_p4(complete_graph(5)) is None
    assert find_p4(complete_bipartite(2, 3)) is None
    g = path_graph(6)
    assert find_p4(g) is not None
    assert find_p4(g, within=0b000111) is None
    p5 = find_p4(cycle_graph(5))
    assert p5 is not None
    # whatever comes back is a genuine induced four-vertex path
    a, b, c, d = p5
    g5 = cycle_graph(5)
    assert g5.has_edge(a, b) and g5.has_edge(b, c) and g5.has_edge(c, d)
    assert not g5.has_edge(a, c) and not g5.has_edge(b, d)
    assert not g5.has_edge(a, d)


def test_build_cotree_shapes():
    t = build_cotree(make_graph(1, []))
    assert t.kind == "leaf" and t.vertex == 0
    t = build_cotree(empty_graph(3))
    assert t.kind == "union" and len(t.children) == 3
    t = build_cotree(complete_graph(3))
    assert t.kind == "join" and len(t.children) == 3
    t = build_cotree(complete_bipartite(2, 2))
    assert t.kind == "join" and len(t.children) == 2
    with pytest.raises(GraphError):
        build_cotree(empty_graph(0))


def test_build_cotree_certificate():
    got = build_cotree(path_graph(4))
    assert isinstance(got, Certificate)
    assert got.kind == "path" and len(got.embedding) == 4
    assert got.validated


def test_recurrences_against_oracle_catalog():
    seen = 0
    for n in range(1, 7):
        for g in by_order()[n]:
            if find_p4(g) is not None:
                continue
            seen += 1
            t = build_cotree(g)
            assert not isinstance(t, Certificate)
            assert cograph.alpha_cotree(t) == oracle.alpha_exact(g)
            assert cograph.ibn_cotree(t) == oracle.ibn_exact(g)
            assert tin_cograph(g) == oracle.tin_exact(g)
    assert seen == 107


def test_recurrences_against_oracle_random():
    rng = random.Random(41)
    for _ in range(150):
        g = random_cograph(rng.randint(2, 8), rng)
        assert find_p4(g) is None
        t = build_cotree(g)
        assert cograph.alpha_cotree(t) == oracle.alpha_exact(g)
        assert cograph.ibn_cotree(t) == oracle.ibn_exact(g)
        assert tin_cograph(g) == oracle.tin_exact(g)


def test_decompose_achieves_exact_value():
    rng = random.Random(43)
    for _ in range(60):
        g = random_cograph(rng.randint(2, 9), rng)
        td = decompose_cograph(g)
        assert isinstance(td, TreeDecomposition)
        ok, why = validate(g, td)
        assert ok, why
        assert independence_number(g, td) == tin_cograph(g)


def test_decompose_known_values():
    assert tin_cograph(complete_bipartite(3, 3)) == 3
    assert tin_cograph(complete_graph(6)) == 1
    assert tin_cograph(empty_graph(5)) == 1
    assert tin_cograph(empty_graph(0)) == 0
    assert tin_cograph(join(path_graph(3), path_graph(3))) == 2
    td = decompose_cograph(empty_graph(0))
    assert isinstance(td, TreeDecomposition)
    got = decompose_cograph(path_graph(5))
    assert isinstance(got, Certificate) and got.kind == "path"


def test_cotree_json_round_trip():
    g = join(empty_graph(2), path_graph(2))
    t = build_cotree(g)
    data = cotree_to_json(t)
    back = cotree_from_json(data)
    assert cotree_to_json(back) == data
    assert cograph.alpha_cotree(back) == cograph.alpha_cotree(t)


def test_cotree_json_errors():
    with pytest.raises(GraphError, match="single-key"):
        cotree_from_json({"leaf": 0, "join": []})
    with pytest.raises(GraphError, match="nonnegative"):
        cotree_from_json({"leaf": -1})
    with pytest.raises(GraphError, match="unknown"):
        cotree_from_json({"meet": []})
    with pytest.raises(GraphError, match="two children"):
        cotree_from_json({"union": [{"leaf": 0}]})
    with pytest.raises(GraphError, match="alternate"):
        cotree_from_json(
            {"union": [{"union": [{"leaf": 0}, {"leaf": 1}]}, {"leaf": 2}]}
        )
    # alternating labels parse fine
    t = cotree_from_json(
        {"union": [{"join": [{"leaf": 0}, {"leaf": 1}]}, {"leaf": 2}]}
    )
    assert t.kind == "union"


def test_random_cograph_properties():
    rng = random.Random(47)
    assert random_cograph(0, rng).n == 0
    assert random_cograph(1, rng).n == 1
    for _ in range(40):
        n = rng.randint(2, 30)
        g = random_cograph(n, rng)
        assert g.n == n
        assert find_p4(g) is None
    with pytest.raises(GraphError):
        random_cograph(-1, rng)


def test_medium_instance():
    # big enough to be a real walk, small enough to re-validate bags
    rng = random.Random(53)
    g = random_cograph(800, rng)
    td = decompose_cograph(g)
    assert isinstance(td, TreeDecomposition)
    value = tin_cograph(g)
    assert value >= 1
    # spot-check the largest bag instead of every bag
    largest = max(td.bags, key=len)
    assert oracle.alpha_exact(g, within=largest) <= value


def test_budget():
    rng = random.Random(59)
    g = random_cograph(200, rng)
    with pytest.raises(BudgetExceeded):
        build_cotree(g, budget=SearchBudget(3))
