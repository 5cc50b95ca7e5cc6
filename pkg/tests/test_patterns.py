import pytest

from tinkit import (
    BudgetExceeded,
    Certificate,
    GraphError,
    InternalError,
    SearchBudget,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    find_induced_embedding,
    find_induced_path_geq,
    find_induced_star,
    find_long_induced_cycle,
    make_graph,
    path_graph,
    pattern_graph,
)
from tinkit.graph import is_induced_cycle, is_induced_path
from tinkit.patterns import (
    PATTERN_KINDS,
    component_attachment_interval,
    cycle_certificate,
    long_segment,
    neighbors_on_path,
    path_certificate,
    path_interval,
    segments_of_path,
    star_certificate,
    star_from_crowded_neighborhoods,
)


def test_pattern_graph_shapes():
    star = pattern_graph("star", {"leaves": 3})
    assert star.n == 4 and star.edge_count == 3 and star.degree(0) == 3
    assert pattern_graph("path", {"vertices": 5}).edge_count == 4
    assert pattern_graph("cycle", {"vertices": 4}).edge_count == 4
    claw = pattern_graph("s_p", {"p": 1})
    assert claw.n == 4 and claw.edge_count == 3
    tri = pattern_graph("t_p", {"p": 1})
    assert tri.n == 3 and tri.edge_count == 3
    two_claws = pattern_graph("k_s_p", {"k": 2, "p": 1})
    assert two_claws.n == 8 and two_claws.edge_count == 6
    two_tris = pattern_graph("k_t_p", {"k": 2, "p": 2})
    assert two_tris.n == 12 and two_tris.edge_count == 12
    gen = pattern_graph("generic", {"n": 3, "edges": [(0, 1)]})
    assert gen.n == 3 and gen.edge_count == 1


def test_pattern_graph_errors():
    with pytest.raises(GraphError):
        pattern_graph("star", {"leaves": 0})
    with pytest.raises(GraphError):
        pattern_graph("path", {"vertices": 0})
    with pytest.raises(GraphError):
        pattern_graph("s_p", {"p": 0})
    with pytest.raises(GraphError):
        pattern_graph("k_s_p", {"k": 0, "p": 1})
    with pytest.raises(GraphError):
        pattern_graph("no-such-kind", {})
    assert "generic" in PATTERN_KINDS


def test_certificate_validate():
    g = complete_bipartite(1, 3)
    cert = Certificate("star", {"leaves": 3}, (0, 1, 2, 3), g)
    assert not cert.validated
    ok, why = cert.validate()
    assert ok and cert.validated
    # a repeated vertex is rejected
    bad = Certificate("star", {"leaves": 3}, (0, 1, 1, 3), g)
    ok, why = bad.validate()
    assert not ok and "repeats" in why
    # an out of range vertex is rejected
    ok, why = Certificate("star", {"leaves": 3}, (0, 1, 2, 9), g).validate()
    assert not ok and "out of range" in why
    # wrong embedding length
    ok, why = Certificate("star", {"leaves": 3}, (0, 1, 2), g).validate()
    assert not ok and "needs 4" in why
    # leaves of a real star are independent; demand an edge where none is
    h = path_graph(4)
    ok, why = Certificate("cycle", {"vertices": 4}, (0, 1, 2, 3), h).validate()
    assert not ok and "should carry an edge" in why
    # demand independence where an edge exists
    k3 = complete_graph(3)
    ok, why = Certificate("star", {"leaves": 2}, (0, 1, 2), k3).validate()
    assert not ok and "no edge" in why
    ok, why = Certificate("star", {"leaves": -1}, (), h).validate()
    assert not ok and "bad pattern parameters" in why


def test_certificate_json_round_trip():
    g = cycle_graph(5)
    cert = cycle_certificate(g, [0, 1, 2, 3, 4])
    data = cert.to_json()
    assert data["validated"] is True
    back = Certificate.from_json(data, g)
    # the flag is re-earned on load, not trusted
    assert back.validated
    assert back.embedding == cert.embedding
    data["embedding"][0] = data["embedding"][1]
    tampered = Certificate.from_json(data, g)
    assert not tampered.validated


def test_minted_certificates():
    g = complete_bipartite(1, 3)
    cert = star_certificate(g, 0, [1, 2, 3])
    assert cert.validated and cert.params == {"leaves": 3}
    p = path_certificate(path_graph(3), [0, 1, 2])
    assert p.validated
    with pytest.raises(InternalError):
        star_certificate(path_graph(3), 0, [1, 2])


def test_star_from_crowded_neighborhoods():
    g = complete_bipartite(1, 4)
    cert = star_from_crowded_neighborhoods(g, [0], [1, 2, 3, 4], d=4)
    assert cert.validated and cert.params["leaves"] == 4
    # two centers, five independent witnesses: one center hosts three
    h = disjoint_union(complete_bipartite(1, 3), complete_bipartite(1, 2))
    cert = star_from_crowded_neighborhoods(
        h, [0, 4], [1, 2, 3, 5, 6], d=3
    )
    assert cert.validated
    assert cert.embedding[0] == 0
    with pytest.raises(InternalError, match="escapes"):
        star_from_crowded_neighborhoods(h, [0], [5], d=1)


def test_find_induced_embedding():
    g = cycle_graph(6)
    emb = find_induced_embedding(path_graph(3), g)
    assert emb is not None
    assert is_induced_path(g, list(emb))
    assert find_induced_embedding(complete_graph(3), g) is None
    assert find_induced_embedding(cycle_graph(4), complete_graph(4)) is None
    assert find_induced_embedding(path_graph(1), g, within=[3]) == (3,)
    assert find_induced_embedding(path_graph(9), g) is None
    assert find_induced_embedding(make_graph(0, []), g) == ()
    # deterministic: lowest host vertices first
    assert find_induced_embedding(path_graph(2), g)[0] == 0


def test_find_induced_embedding_budget():
    g = cycle_graph(8)
    with pytest.raises(BudgetExceeded):
        find_induced_embedding(path_graph(5), g, budget=SearchBudget(1))


def test_find_induced_star():
    assert find_induced_star(cycle_graph(6), 3) is None
    g = complete_bipartite(1, 3)
    cert = find_induced_star(g, 3)
    assert cert is not None and cert.validated
    assert cert.embedding[0] == 0
    # K4 has high degree but no two independent neighbors
    assert find_induced_star(complete_graph(4), 2) is None
    # pinning the center
    h = disjoint_union(complete_bipartite(1, 3), complete_bipartite(1, 3))
    cert = find_induced_star(h, 3, center=4)
    assert cert is not None and cert.embedding[0] == 4
    assert find_induced_star(h, 3, center=1) is None
    with pytest.raises(GraphError):
        find_induced_star(h, 0)
    with pytest.raises(GraphError):
        find_induced_star(h, 3, center=99)


def test_find_induced_path_geq():
    g = cycle_graph(8)
    p = find_induced_path_geq(g, 7)
    assert p is not None and len(p) == 7
    assert is_induced_path(g, p)
    assert find_induced_path_geq(g, 8) is None
    assert find_induced_path_geq(complete_graph(5), 3) is None
    assert find_induced_path_geq(g, 1) == [0]
    # the first length vertices of a longer path still count
    long = path_graph(30)
    p = find_induced_path_geq(long, 12)
    assert p is not None and len(p) == 12 and is_induced_path(long, p)
    with pytest.raises(GraphError):
        find_induced_path_geq(g, 0)
    assert find_induced_path_geq(g, 9) is None


def test_find_long_induced_cycle():
    g = cycle_graph(6)
    cyc = find_long_induced_cycle(g, 6)
    assert cyc is not None and len(cyc) == 6
    assert is_induced_cycle(g, cyc)
    assert find_long_induced_cycle(g, 7) is None
    h = disjoint_union(complete_graph(3), cycle_graph(5))
    cyc = find_long_induced_cycle(h, 4)
    assert cyc is not None and len(cyc) == 5
    assert is_induced_cycle(h, cyc)
    # chords disqualify: the wheel's rim is not induced around the hub
    assert find_long_induced_cycle(complete_graph(5), 4) is None
    with pytest.raises(GraphError):
        find_long_induced_cycle(g, 2)


def path_with_pendant(neighbors, m=6):
    """Path 0..m-1 plus vertex m adjacent to the given path positions."""
    edges = [(i, i + 1) for i in range(m - 1)]
    edges += [(m, p) for p in neighbors]
    return make_graph(m + 1, edges), list(range(m)), m


def test_neighbors_on_path_and_segments():
    g, path, v = path_with_pendant([1, 4])
    assert neighbors_on_path(g, path, v) == [1, 4]
    segs = segments_of_path(g, path, v)
    assert segs == [[0, 1], [1, 2, 3, 4], [4, 5]]
    # every path edge lands in exactly one segment
    covered = [(a, b) for s in segs for a, b in zip(s, s[1:])]
    assert sorted(covered) == [(i, i + 1) for i in range(5)]
    with pytest.raises(GraphError, match="no neighbor"):
        g2, path2, v2 = path_with_pendant([])
        segments_of_path(g2, path2, v2)
    with pytest.raises(GraphError, match="on the path"):
        segments_of_path(g, path, 3)
    with pytest.raises(GraphError, match="induced path"):
        c4_plus = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0)])
        segments_of_path(c4_plus, [0, 1, 2, 3], 4)


def test_segments_of_cycle():
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(6, 0), (6, 3)]
    g = make_graph(7, edges)
    segs = segments_of_path(g, [0, 1, 2, 3, 4, 5], 6, cyclic=True)
    assert segs == [[0, 1, 2, 3], [3, 4, 5, 0]]
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(6, 0)]
    g1 = make_graph(7, edges)
    with pytest.raises(GraphError, match="two neighbors"):
        segments_of_path(g1, [0, 1, 2, 3, 4, 5], 6, cyclic=True)


def test_long_segment_returns_segment():
    # v touches positions 0 and 3; the block at position 2 is clear
    g, path, v = path_with_pendant([0, 3])
    seg = long_segment(g, path, v, p=2, d=3)
    assert isinstance(seg, list)
    assert seg == [0, 1, 2, 3]
    # non-neighbors inside: positions 1 and 2
    assert sum(1 for x in seg if not g.has_edge(v, x)) >= 1
    # no neighbor at all: the whole path qualifies
    g0, path0, v0 = path_with_pendant([])
    assert long_segment(g0, path0, v0, p=2, d=3) == path0


def test_long_segment_returns_star():
    # v touches every block: one leaf per block is an induced star
    g, path, v = path_with_pendant([0, 2, 4])
    got = long_segment(g, path, v, p=2, d=3)
    assert isinstance(got, Certificate)
    assert got.kind == "star" and got.params["leaves"] == 3
    assert got.embedding[0] == v


def test_long_segment_errors():
    g, path, v = path_with_pendant([0])
    with pytest.raises(GraphError, match="needs 8"):
        long_segment(g, path, v, p=2, d=4)
    with pytest.raises(GraphError):
        long_segment(g, path, v, p=0, d=3)
    with pytest.raises(GraphError):
        long_segment(g, path, v, p=2, d=0)


def test_path_interval_window():
    g, path, v = path_with_pendant([2, 5], m=10)
    got = path_interval(g, path, v, q=4, d=3)
    assert not isinstance(got, Certificate)
    assert (got.lo, got.hi) == (2, 5)
    assert got.vertices == [2, 3, 4, 5]


def test_path_interval_cycle_certificate():
    # two far apart neighbors close a long cycle through v
    g, path, v = path_with_pendant([0, 9], m=12)
    got = path_interval(g, path, v, q=4, d=3)
    assert isinstance(got, Certificate)
    assert got.kind == "cycle"
    assert len(got.embedding) == 11
    assert got.validated


def test_path_interval_star_certificate():
    # ten consecutive neighbors: alternate ones are independent leaves
    g, path, v = path_with_pendant(list(range(10)), m=12)
    got = path_interval(g, path, v, q=4, d=3)
    assert isinstance(got, Certificate)
    assert got.kind == "star" and got.params["leaves"] == 3
    assert got.embedding[0] == v


def test_path_interval_errors():
    g, path, v = path_with_pendant([2], m=6)
    with pytest.raises(GraphError, match="d >= 2"):
        path_interval(g, path, v, q=4, d=1)
    with pytest.raises(GraphError, match="at least 3"):
        path_interval(g, path, v, q=2, d=3)
    g0, path0, v0 = path_with_pendant([], m=6)
    with pytest.raises(GraphError, match="no neighbor"):
        path_interval(g0, path0, v0, q=4, d=3)


def attachment_host(extra_edges=()):
    """Path 0..19, component {20, 21}, bridge vertex 22 seeing both."""
    edges = [(i, i + 1) for i in range(19)]
    edges += [(20, 21), (22, 20), (22, 10)]
    edges += list(extra_edges)
    return make_graph(24, edges)


def test_component_attachment_interval():
    g = attachment_host()
    path = list(range(20))
    got = component_attachment_interval(g, path, [20, 21], 22, q=4, d=3)
    assert not isinstance(got, Certificate)
    # the neighbor window [10, 10] grows by q on each side
    assert (got.lo, got.hi) == (6, 14)
    assert got.vertices == list(range(6, 15))


def test_component_attachment_cycle():
    # a second attacher reaches the path far outside the window
    g = attachment_host([(23, 21), (23, 0)])
    path = list(range(20))
    got = component_attachment_interval(g, path, [20, 21], 22, q=4, d=3)
    assert isinstance(got, Certificate)
    assert got.kind == "cycle"
    assert len(got.embedding) >= 4
    assert got.validated


def test_component_attachment_errors():
    g = attachment_host()
    path = list(range(20))
    with pytest.raises(GraphError, match="empty"):
        component_attachment_interval(g, path, [], 22, q=4, d=3)
    with pytest.raises(GraphError, match="no neighbor in the component"):
        component_attachment_interval(g, path, [21], 22, q=4, d=3)
    with pytest.raises(GraphError, match="not connected"):
        # vertex 23 is isolated, so {20, 21, 23} is not one component
        component_attachment_interval(g, path, [20, 21, 23], 22, q=4, d=3)
    with pytest.raises(GraphError, match="touches"):
        g3 = attachment_host([(21, 15)])
        component_attachment_interval(g3, path, [20, 21], 22, q=4, d=3)
    with pytest.raises(GraphError, match="inside the component"):
        component_attachment_interval(g, path, [20, 21], 20, q=4, d=3)
