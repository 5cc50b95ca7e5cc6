"""Lifting host tree decompositions to intersection graphs.

Given connected subgraphs of a host graph, their intersection graph
inherits the host's tree decomposition: keep the tree, and put a member
into every bag its vertex set touches.  Independent members are pairwise
disjoint, so each one claims a private vertex of the host bag, which
caps every lifted bag's independence number by the host bag's size.
Line graphs are the special case where the members are the edges.
"""

from __future__ import annotations

from . import oracle
from .budget import SearchBudget, ensure_budget
from .errors import DecompositionError, GraphError, InternalError
from .graph import (
    GnWitness,
    Graph,
    MinorModel,
    bits_of,
    complete_bipartite,
    is_connected,
    iter_bits,
    line_graph,
    verify_induced_minor_model,
)
from .tdecomp import TreeDecomposition, validate


class SubgraphFamily:
    """Connected subgraphs of a host graph, given by their vertex sets."""

    __slots__ = ("host", "members", "masks")

    def __init__(self, host: Graph, members) -> None:
        self.host = host
        out = []
        masks = []
        for i, member in enumerate(members):
            s = frozenset(member)
            if not s:
                raise GraphError(f"member {i} is empty")
            for v in s:
                if not 0 <= v < host.n:
                    raise GraphError(
                        f"member {i} has out-of-range vertex {v}"
                    )
            m = bits_of(s)
            if not is_connected(host, m):
                raise GraphError(f"member {i} is not connected in the host")
            out.append(s)
            masks.append(m)
        self.members = tuple(out)
        self.masks = tuple(masks)

    def __len__(self) -> int:
        return len(self.members)

    def intersection_graph(self) -> Graph:
        """One vertex per member, edges between members sharing a host
        vertex."""
        k = len(self.members)
        h = Graph(k)
        for i in range(k):
            for j in range(i + 1, k):
                if self.masks[i] & self.masks[j]:
                    h._adj[i] |= 1 << j
                    h._adj[j] |= 1 << i
        return h

    def to_json(self) -> dict:
        return {"members": [sorted(m) for m in self.members]}

    @classmethod
    def from_json(cls, host: Graph, data: dict) -> "SubgraphFamily":
        if "members" not in data:
            raise GraphError("family object needs a 'members' list")
        return cls(host, data["members"])


def lift_decomposition(
    family: SubgraphFamily,
    td_host: TreeDecomposition,
    budget: SearchBudget | None = None,
) -> tuple[Graph, TreeDecomposition]:
    """Intersection graph of the family plus the lifted decomposition.

    Every lifted bag's independence number is checked against the size
    of its host bag; the tree shape is reused as is.
    """
    budget = ensure_budget(budget)
    ok, why = validate(family.host, td_host)
    if not ok:
        raise DecompositionError(f"host decomposition invalid: {why}")
    gi = family.intersection_graph()
    bag_bits = [bits_of(bag) for bag in td_host.bags]
    bags = []
    for hb in bag_bits:
        bags.append(frozenset(
            i for i, m in enumerate(family.masks) if m & hb
        ))
    td = TreeDecomposition(gi, bags, td_host.tree_edges)
    ok, why = validate(gi, td)
    if not ok:
        raise InternalError(f"lifted decomposition is invalid: {why}")
    for bag, host_bag in zip(bags, td_host.bags):
        if len(bag) <= len(host_bag):
            continue
        wit = oracle.independent_set_of_size(
            gi, len(host_bag) + 1, within=bag, budget=budget
        )
        if wit is not None:
            raise InternalError(
                "disjoint members outnumbered their host bag"
            )
    return gi, td


def line_decomposition(
    g: Graph,
    td: TreeDecomposition | None = None,
    budget: SearchBudget | None = None,
) -> tuple[Graph, list[tuple[int, int]], TreeDecomposition]:
    """Line graph, its vertex-to-edge map, and a lifted decomposition.

    With no host decomposition supplied, a min-fill heuristic one is
    computed first.  The lifted bags' independence numbers stay within
    the host width plus one.
    """
    budget = ensure_budget(budget)
    if td is None:
        td = heuristic_td(g, budget)
    edge_list = g.edges()
    family = SubgraphFamily(g, [frozenset(e) for e in edge_list])
    gi, lifted = lift_decomposition(family, td, budget)
    lg, check_list = line_graph(g)
    if check_list != edge_list or lg != gi:
        raise InternalError("edge family disagrees with the line graph")
    return lg, edge_list, lifted


def heuristic_td(
    g: Graph, budget: SearchBudget | None = None
) -> TreeDecomposition:
    """Tree decomposition from a min-fill elimination ordering.

    No width guarantee, but deterministic: ties break toward the lowest
    vertex.  Bags are each eliminated vertex with its remaining
    neighbors after earlier fill-in.
    """
    budget = ensure_budget(budget)
    if g.n == 0:
        return TreeDecomposition(g, [frozenset()], [])
    adj = [g.adj_bits(v) for v in range(g.n)]
    remaining = g.full_mask
    order = []
    bags_bits = []
    while remaining:
        best = None
        best_fill = None
        for v in iter_bits(remaining):
            budget.spend()
            nb = adj[v] & remaining & ~(1 << v)
            fill = 0
            for u in iter_bits(nb):
                above = ~((1 << (u + 1)) - 1)
                fill += (nb & ~adj[u] & above).bit_count()
            if best_fill is None or fill < best_fill:
                best, best_fill = v, fill
                if fill == 0:
                    break
        v = best
        nb = adj[v] & remaining & ~(1 << v)
        bags_bits.append(nb | (1 << v))
        order.append(v)
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        remaining &= ~(1 << v)
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    for i, bag in enumerate(bags_bits):
        rest = bag & ~(1 << order[i])
        if rest:
            edges.append((i, min(pos[u] for u in iter_bits(rest))))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
    td = TreeDecomposition(
        g, [frozenset(iter_bits(b)) for b in bags_bits], edges
    )
    ok, why = validate(g, td)
    if not ok:
        raise InternalError(f"elimination decomposition invalid: {why}")
    return td


def gn_host_decomposition(witness: GnWitness) -> TreeDecomposition:
    """Star-shaped decomposition of the subdivided clique witness.

    One hub bag holds the whole core; every subdividing vertex gets a
    three-vertex bag with its two core endpoints, hung off the hub.
    Width is the core size minus one.
    """
    g = witness.graph
    n = len(witness.core)
    bags = [frozenset(witness.core)]
    edges = []
    for i, (u, v) in enumerate(witness.pairs):
        bags.append(frozenset((n + i, u, v)))
        edges.append((0, i + 1))
    td = TreeDecomposition(g, bags, edges)
    ok, why = validate(g, td)
    if not ok:
        raise InternalError(f"witness decomposition invalid: {why}")
    return td


def gn_biclique_minor_model(
    witness: GnWitness,
) -> tuple[Graph, list[tuple[int, int]], MinorModel]:
    """Balanced biclique inside the line graph of the witness.

    The red edges at each core vertex form a clique of the line graph,
    as do the blue ones; red cliques meet no other red clique, blue meet
    no other blue, and every red clique touches every blue clique.
    Contracting them yields the complete bipartite pattern, which pins
    the line graph's decomposition independence from below.
    """
    g = witness.graph
    n = len(witness.core)
    lg, edge_list = line_graph(g)
    index = {e: i for i, e in enumerate(edge_list)}
    reds = [[] for _ in range(n)]
    blues = [[] for _ in range(n)]
    for a, b in witness.red_edges:
        core = a if a < n else b
        reds[core].append(index[(a, b)])
    for a, b in witness.blue_edges:
        core = a if a < n else b
        blues[core].append(index[(a, b)])
    branch = tuple(
        frozenset(s) for s in (*reds, *blues)
    )
    pattern = complete_bipartite(n, n)
    model = MinorModel(pattern, branch)
    ok, why = verify_induced_minor_model(lg, pattern, model.branch_sets)
    if not ok:
        raise InternalError(f"witness lost its biclique model: {why}")
    return lg, edge_list, model
