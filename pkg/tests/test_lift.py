import random

import pytest

from tinkit import (
    DecompositionError,
    GraphError,
    TreeDecomposition,
    complete_graph,
    cycle_graph,
    empty_graph,
    gen_Gn,
    line_graph,
    make_graph,
    oracle,
    path_graph,
    validate,
    verify_induced_minor_model,
    width,
)
from tinkit.lift import (
    SubgraphFamily,
    gn_biclique_minor_model,
    gn_host_decomposition,
    heuristic_td,
    lift_decomposition,
    line_decomposition,
)


def test_family_validation():
    g = path_graph(4)
    fam = SubgraphFamily(g, [{0, 1}, {2}, {1, 2, 3}])
    assert len(fam) == 3
    assert fam.members[1] == frozenset({2})
    with pytest.raises(GraphError, match="empty"):
        SubgraphFamily(g, [set()])
    with pytest.raises(GraphError, match="out-of-range"):
        SubgraphFamily(g, [{0, 9}])
    with pytest.raises(GraphError, match="not connected"):
        SubgraphFamily(g, [{0, 3}])


def test_family_json():
    g = path_graph(4)
    fam = SubgraphFamily(g, [{0, 1}, {2, 3}])
    data = fam.to_json()
    assert data == {"members": [[0, 1], [2, 3]]}
    back = SubgraphFamily.from_json(g, data)
    assert back.members == fam.members
    with pytest.raises(GraphError, match="members"):
        SubgraphFamily.from_json(g, {})


def test_intersection_graph():
    g = path_graph(5)
    fam = SubgraphFamily(g, [{0, 1}, {1, 2}, {3, 4}])
    ig = fam.intersection_graph()
    assert ig.n == 3
    assert ig.edges() == [(0, 1)]
    # an empty family lifts to the empty graph
    assert SubgraphFamily(g, []).intersection_graph().n == 0


def test_lift_decomposition():
    g = path_graph(6)
    td = TreeDecomposition(g, [{i, i + 1} for i in range(5)],
                           [(i, i + 1) for i in range(4)])
    fam = SubgraphFamily(g, [{0, 1, 2}, {2, 3}, {4, 5}, {3, 4}])
    ig, lifted = lift_decomposition(fam, td)
    ok, why = validate(ig, lifted)
    assert ok, why
    assert lifted.node_count == td.node_count
    assert lifted.tree_edges == td.tree_edges
    # member 0 touches host bags 0, 1, 2
    assert all(0 in lifted.bags[i] for i in range(3))
    assert 0 not in lifted.bags[3]
    # each lifted bag's independence stays within its host bag's size
    for bag, host_bag in zip(lifted.bags, td.bags):
        assert oracle.alpha_exact(ig, within=bag) <= len(host_bag)


def test_lift_rejects_bad_host():
    g = path_graph(4)
    bad = TreeDecomposition(g, [{0, 1}], [])
    fam = SubgraphFamily(g, [{0, 1}])
    with pytest.raises(DecompositionError, match="host"):
        lift_decomposition(fam, bad)


def test_line_decomposition_matches_line_graph():
    g = cycle_graph(6)
    lg, edge_list, lifted = line_decomposition(g)
    expect, expect_list = line_graph(g)
    assert lg == expect and edge_list == expect_list
    ok, why = validate(lg, lifted)
    assert ok, why
    host_w = width(heuristic_td(g))
    for bag in lifted.bags:
        assert oracle.alpha_exact(lg, within=bag) <= host_w + 1


def test_line_decomposition_supplied_host():
    g = path_graph(5)
    td = TreeDecomposition(g, [{i, i + 1} for i in range(4)],
                           [(i, i + 1) for i in range(3)])
    lg, edge_list, lifted = line_decomposition(g, td)
    assert lg.n == 4
    for bag in lifted.bags:
        assert oracle.alpha_exact(lg, within=bag) <= 2


def test_line_decomposition_edgeless():
    lg, edge_list, lifted = line_decomposition(empty_graph(3))
    assert lg.n == 0 and edge_list == []
    ok, why = validate(lg, lifted)
    assert ok, why


def test_heuristic_td_known_widths():
    assert width(heuristic_td(path_graph(10))) == 1
    assert width(heuristic_td(cycle_graph(10))) == 2
    assert width(heuristic_td(complete_graph(5))) == 4
    td = heuristic_td(empty_graph(0))
    assert td.node_count == 1


def test_heuristic_td_random_valid_and_deterministic():
    rng = random.Random(23)
    for _ in range(25):
        n = rng.randint(1, 12)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.35
        ]
        g = make_graph(n, edges)
        td = heuristic_td(g)
        ok, why = validate(g, td)
        assert ok, why
        again = heuristic_td(g)
        assert again.bags == td.bags and again.tree_edges == td.tree_edges
        # never worse than trivial, never better than exact
        assert width(td) <= n - 1
        if n <= 10:
            assert width(td) >= oracle.tw_exact(g)


def test_gn_host_decomposition():
    w = gen_Gn(3)
    td = gn_host_decomposition(w)
    ok, why = validate(w.graph, td)
    assert ok, why
    assert td.node_count == 7
    assert width(td) == 2
    assert td.bags[0] == frozenset(w.core)


def test_gn_biclique_minor_model():
    w = gen_Gn(3)
    lg, edge_list, model = gn_biclique_minor_model(w)
    assert lg.n == 12 and len(edge_list) == 12
    assert model.pattern.n == 6
    assert len(model.branch_sets) == 6
    ok, why = verify_induced_minor_model(lg, model.pattern, model.branch_sets)
    assert ok, why
    data = model.to_json()
    assert len(data["branch_sets"]) == 6


def test_lifted_line_graph_of_gn():
    # the witness decomposition lifts to the line graph with per-bag
    # independence at most the core size
    w = gen_Gn(3)
    td = gn_host_decomposition(w)
    lg, edge_list, lifted = line_decomposition(w.graph, td)
    ok, why = validate(lg, lifted)
    assert ok, why
    for bag in lifted.bags:
        assert oracle.alpha_exact(lg, within=bag) <= 3
