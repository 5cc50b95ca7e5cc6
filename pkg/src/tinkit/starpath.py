"""Decomposing graphs that exclude a star K_{1,d} and a path P_s.

The builder peels closed neighborhoods along greedily grown chains.
Starting from the lowest vertex of a component, each step takes the
current vertex's neighborhood slice, removes it, and recurses into the
leftover components through the lowest slice vertex that still sees
them.  Chains are induced paths by construction, so a chain that wants
to grow past s - 2 vertices extends to an induced P_s and the graph is
outside the class.  Otherwise the accumulated slices along each chain
become bags of a tree decomposition.

Every bag sits inside the union of at most s - 2 closed neighborhoods,
so an independent set bigger than (d-1)(s-2) puts d independent
vertices inside one neighborhood, which is an induced K_{1,d}.  The
decomposer measures every bag and converts any violation into that
star certificate, so a returned decomposition always satisfies the
bound it advertises.
"""

from __future__ import annotations

from . import oracle
from .budget import SearchBudget, ensure_budget
from .errors import GraphError, InternalError
from .graph import Graph, bit_list, component_bits, iter_bits
from .patterns import (
    Certificate,
    path_certificate,
    star_from_crowded_neighborhoods,
)
from .tdecomp import TreeDecomposition, merge_at_hub


def alpha_bound(d: int, s: int) -> int:
    """The independence bound a returned decomposition satisfies."""
    return (d - 1) * (s - 2)


def choose_entry(g: Graph, candidates, region) -> int:
    """Lowest candidate vertex with a neighbor inside the region."""
    rbits = region if isinstance(region, int) else sum(1 << v for v in region)
    for u in sorted(candidates):
        if g.adj_bits(u) & rbits:
            return u
    raise GraphError("no candidate vertex has a neighbor in the region")


def decompose(
    g: Graph, d: int, s: int, budget: SearchBudget | None = None
):
    """Tree decomposition with bag independence at most (d-1)(s-2), or a
    certificate (an induced K_{1,d} or an induced P_s) showing the graph
    is outside the class.
    """
    if d < 2:
        raise GraphError(f"star order must give d >= 2, got {d}")
    if s < 3:
        raise GraphError(f"path length must give s >= 3, got {s}")
    budget = ensure_budget(budget)
    if g.n == 0:
        return TreeDecomposition(g, [frozenset()], [])

    bound = alpha_bound(d, s)
    max_depth = s - 2

    parts = []
    for comp in component_bits(g):
        part = _decompose_component(g, comp, d, s, bound, max_depth, budget)
        if isinstance(part, Certificate):
            return part
        parts.append(part)
    if len(parts) == 1:
        return parts[0]
    return merge_at_hub(g, parts, frozenset())


def _decompose_component(
    g: Graph,
    comp: int,
    d: int,
    s: int,
    bound: int,
    max_depth: int,
    budget: SearchBudget,
):
    bags: list[frozenset[int]] = []
    chains: list[tuple[int, ...]] = []
    edges: list[tuple[int, int]] = []

    root_v = (comp & -comp).bit_length() - 1
    # stack entries: (region bits, entry vertex, accumulated slice bits,
    #                 chain so far, parent node id)
    stack = [(comp, root_v, 0, (), -1)]
    while stack:
        budget.spend()
        region, v, acc, chain, parent = stack.pop()
        a_bits = g.adj_bits(v) & region
        slice_bits = a_bits | 1 << v
        bag_bits = acc | slice_bits
        chain = chain + (v,)
        node = len(bags)
        bags.append(frozenset(iter_bits(bag_bits)))
        chains.append(chain)
        if parent >= 0:
            edges.append((parent, node))

        leftover = region & ~slice_bits
        if not leftover:
            continue
        try:
            if len(chain) >= max_depth:
                # the chain extends into the leftover twice over: an
                # entry vertex plus one of its neighbors completes P_s
                h = component_bits(g, leftover)[0]
                entry = choose_entry(g, bit_list(a_bits), h)
                tip_bits = g.adj_bits(entry) & h
                tip = (tip_bits & -tip_bits).bit_length() - 1
                return path_certificate(g, list(chain) + [entry, tip])
            for h in reversed(component_bits(g, leftover)):
                entry = choose_entry(g, bit_list(a_bits), h)
                stack.append((h | 1 << entry, entry, bag_bits, chain, node))
        except GraphError as exc:
            raise InternalError(
                f"peel lost contact with a leftover component: {exc}"
            ) from exc

    for node, bag in enumerate(bags):
        if len(bag) <= bound:
            continue
        witness = oracle.independent_set_of_size(
            g, bound + 1, within=bag, budget=budget
        )
        if witness is None:
            continue
        return star_from_crowded_neighborhoods(g, chains[node], witness, d)

    return TreeDecomposition(g, bags, edges, vertices=bit_list(comp))
