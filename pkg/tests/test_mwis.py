import random
from fractions import Fraction

import pytest

from tinkit import (
    DecompositionError,
    GraphError,
    TreeDecomposition,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    make_graph,
    mwis,
    oracle,
    path_graph,
)
from tinkit.lift import heuristic_td
from tinkit.mwis import (
    WeightedInstance,
    solve,
    solve_auto,
    weight_from_json,
    weight_to_json,
)


def test_instance_validation():
    g = path_graph(3)
    inst = WeightedInstance(g, [1, "1/2", Fraction(3, 4)])
    assert inst.weights == (Fraction(1), Fraction(1, 2), Fraction(3, 4))
    assert inst.weight_of([0, 2]) == Fraction(7, 4)
    with pytest.raises(GraphError, match="negative"):
        WeightedInstance(g, [1, -1, 1])
    with pytest.raises(GraphError, match="expected 3"):
        WeightedInstance(g, [1, 2])


def test_weight_json_forms():
    assert weight_from_json(4) == Fraction(4)
    assert weight_from_json("4/3") == Fraction(4, 3)
    assert weight_from_json([7, 2]) == Fraction(7, 2)
    assert weight_from_json({"num": 3}) == Fraction(3)
    assert weight_from_json({"num": 3, "den": 6}) == Fraction(1, 2)
    with pytest.raises(GraphError):
        weight_from_json(True)
    with pytest.raises(GraphError):
        weight_from_json(None)
    with pytest.raises(GraphError):
        weight_from_json({"value": 1})
    w = Fraction(5, 3)
    assert weight_from_json(weight_to_json(w)) == w


def test_instance_json_round_trip():
    g = path_graph(2)
    inst = WeightedInstance(g, ["1/3", 2])
    back = WeightedInstance.from_json(g, inst.to_json())
    assert back.weights == inst.weights
    with pytest.raises(GraphError, match="weights"):
        WeightedInstance.from_json(g, {})


def test_solve_known_cycle():
    g = cycle_graph(5)
    inst = WeightedInstance(g, [1, 2, 3, 4, 5])
    td = heuristic_td(g)
    value, chosen = solve(inst, td)
    assert value == Fraction(8)
    assert chosen == {2, 4}


def test_solve_rejects_bad_decomposition():
    g = path_graph(3)
    inst = WeightedInstance(g, [1, 1, 1])
    broken = TreeDecomposition(g, [{0, 1}], [])
    with pytest.raises(DecompositionError):
        solve(inst, broken)
    partial = TreeDecomposition(g, [{0, 1}], [], vertices={0, 1})
    with pytest.raises(DecompositionError, match="cover"):
        solve(inst, partial)


def test_solve_against_oracle():
    rng = random.Random(61)
    for _ in range(40):
        n = rng.randint(1, 12)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.3
        ]
        g = make_graph(n, edges)
        weights = [Fraction(rng.randint(0, 12), rng.randint(1, 3))
                   for _ in range(n)]
        inst = WeightedInstance(g, weights)
        value, chosen = solve(inst, heuristic_td(g))
        expect, _ = oracle.mwis_exact(g, weights)
        assert value == expect
        assert inst.weight_of(chosen) == value


def test_solve_empty_graph():
    inst = WeightedInstance(empty_graph(0), [])
    value, chosen = solve(inst, mwis.decompose_trivial(empty_graph(0)))
    assert value == 0 and chosen == set()


def test_solve_auto_routes():
    # a four-path-free graph goes through its cotree
    g = disjoint_union(complete_graph(3), complete_graph(2))
    inst = WeightedInstance(g, [1, 2, 3, 4, 5])
    value, chosen, info = solve_auto(inst)
    assert info["strategy"] == "cograph"
    assert value == Fraction(3 + 5)
    # a long path is outside the cotree class
    g = path_graph(6)
    inst = WeightedInstance(g, [1] * 6)
    value, chosen, info = solve_auto(inst)
    assert info["strategy"] == "heuristic"
    assert value == Fraction(3)
    assert info["independence"] >= 1


def test_solve_auto_hints():
    g = disjoint_union(complete_graph(3), complete_graph(2))
    inst = WeightedInstance(g, [1, 2, 3, 4, 5])
    value, chosen, info = solve_auto(inst, class_hint=("star-path", 3, 5))
    assert info["strategy"] == "star-path"
    assert value == Fraction(8)
    value, chosen, info = solve_auto(inst, class_hint=("backbone", 3, 1))
    assert info["strategy"] == "backbone"
    assert value == Fraction(8)
    # out-of-class input falls back to the heuristic
    g = path_graph(8)
    inst = WeightedInstance(g, [1] * 8)
    value, chosen, info = solve_auto(inst, class_hint=("star-path", 3, 5))
    assert info["strategy"] == "heuristic"
    assert value == Fraction(4)
    with pytest.raises(GraphError, match="unknown strategy"):
        solve_auto(inst, class_hint=("magic", 1, 1))


def test_solve_auto_dict_hint():
    g = path_graph(4)
    inst = WeightedInstance(g, [2, 1, 1, 2])
    value, chosen, info = solve_auto(
        inst, class_hint={"strategy": "star-path", "d": 3, "s": 6}
    )
    assert info["strategy"] == "star-path"
    assert value == Fraction(4)
    assert chosen == {0, 3}


def test_zero_weights():
    g = complete_graph(3)
    inst = WeightedInstance(g, [0, 0, 0])
    value, chosen = solve(inst, heuristic_td(g))
    assert value == 0
    assert inst.weight_of(chosen) == 0
