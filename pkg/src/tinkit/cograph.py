"""Cotrees and exact decompositions for graphs with no induced
four-vertex path.

Such graphs decompose recursively into disjoint unions and joins down
to single vertices; the recursion tree is the cotree.  Independence
number and the induced-biclique number fall out of two bottom-up
recurrences, and a tree decomposition whose bag independence exactly
matches the lower bound comes from walking the cotree once.  Graphs
outside the class yield a four-vertex induced path certificate instead.
"""

from __future__ import annotations

from . import oracle
from .budget import SearchBudget, ensure_budget
from .errors import GraphError, InternalError
from .graph import Graph, bit_list, bits_of, component_bits, iter_bits
from .patterns import Certificate, path_certificate
from .tdecomp import (
    TreeDecomposition,
    add_to_all_bags,
    merge_at_hub,
    validate,
)

#: bags are re-validated after assembly up to this many vertices; larger
#: instances skip the quadratic check and rely on the construction
_VALIDATE_LIMIT = 1000


class Cotree:
    """Node of a cotree: a leaf holding one vertex, or a union / join
    over at least two children.

    Children lists are filled in during construction, so arity and
    label alternation are enforced by the builder rather than here.
    """

    __slots__ = ("kind", "vertex", "children")

    def __init__(self, kind: str, vertex=None, children=None) -> None:
        if kind not in ("leaf", "union", "join"):
            raise GraphError(f"unknown cotree label {kind!r}")
        self.kind = kind
        self.vertex = vertex
        self.children = children if children is not None else []

    def __repr__(self) -> str:
        if self.kind == "leaf":
            return f"Cotree(leaf {self.vertex})"
        return f"Cotree({self.kind}, {len(self.children)} children)"


def co_component_bits(g: Graph, within: int) -> list[int]:
    """Connected components of the complement, restricted to ``within``,
    each as a bitset in ascending order of lowest vertex."""
    remaining = within
    out = []
    while remaining:
        v = remaining & -remaining
        comp = 0
        frontier = v
        while frontier:
            comp |= frontier
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= within & ~g.adj_bits(u) & ~(1 << u)
            frontier = nxt & ~comp
        out.append(comp)
        remaining &= ~comp
    return out


def find_p4(g: Graph, within=None) -> list[int] | None:
    """Lowest induced four-vertex path, scanning middle edges.

    Every such path has a middle edge (v1, v2) with one endpoint seeing
    only v1 and the other seeing only v2, so scanning all edges with
    both orientations is exhaustive.
    """
    mask = g.full_mask if within is None else within
    for v1 in iter_bits(mask):
        for v2 in iter_bits(g.adj_bits(v1) & mask):
            ends_a = g.adj_bits(v1) & ~g.adj_bits(v2) & mask & ~(1 << v2)
            ends_b = g.adj_bits(v2) & ~g.adj_bits(v1) & mask & ~(1 << v1)
            if not ends_a or not ends_b:
                continue
            for x in iter_bits(ends_a):
                free = ends_b & ~g.adj_bits(x)
                if free:
                    y = (free & -free).bit_length() - 1
                    return [x, v1, v2, y]
    return None


def build_cotree(g: Graph, budget: SearchBudget | None = None):
    """Cotree of g, or a four-vertex path certificate when g has one.

    Children are ordered by lowest contained vertex, unions split into
    connected components and joins into complement components, so the
    result is canonical for the graph.
    """
    budget = ensure_budget(budget)
    if g.n == 0:
        raise GraphError("the empty graph has no cotree")
    root_slot: list[Cotree] = []
    stack = [(g.full_mask, root_slot)]
    while stack:
        mask, out = stack.pop()
        budget.spend()
        if mask & (mask - 1) == 0:
            out.append(Cotree("leaf", vertex=mask.bit_length() - 1))
            continue
        parts = component_bits(g, mask)
        if len(parts) >= 2:
            node = Cotree("union")
        else:
            parts = co_component_bits(g, mask)
            if len(parts) >= 2:
                node = Cotree("join")
            else:
                witness = find_p4(g, mask)
                if witness is None:
                    raise InternalError(
                        "a connected co-connected graph hid its"
                        " four-vertex path"
                    )
                return path_certificate(g, witness)
        out.append(node)
        for part in reversed(parts):
            stack.append((part, node.children))
    return root_slot[0]


def _info(root: Cotree) -> dict:
    """Per-node (size, vertex mask, independence, biclique) table,
    computed bottom-up without recursion."""
    info: dict[int, tuple[int, int, int, int]] = {}
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if not done:
            stack.append((node, True))
            for child in node.children:
                stack.append((child, False))
            continue
        if node.kind == "leaf":
            info[id(node)] = (1, 1 << node.vertex, 1, 0)
            continue
        if len(node.children) < 2:
            raise GraphError("cotree inner nodes need two children")
        rows = [info[id(c)] for c in node.children]
        size = sum(r[0] for r in rows)
        mask = 0
        for r in rows:
            mask |= r[1]
        alphas = [r[2] for r in rows]
        ibns = [r[3] for r in rows]
        if node.kind == "union":
            alpha, ibn = sum(alphas), max(ibns)
        else:
            # a biclique across a join pairs independent sets from two
            # children, so the second largest child independence joins
            # the children's own biclique numbers
            alpha = max(alphas)
            ibn = max(max(ibns), sorted(alphas)[-2])
        info[id(node)] = (size, mask, alpha, ibn)
    return info


def alpha_cotree(t: Cotree) -> int:
    """Independence number of the graph the cotree describes."""
    return _info(t)[id(t)][2]


def ibn_cotree(t: Cotree) -> int:
    """Largest balanced side count over induced complete bipartite
    subgraphs, from the cotree recurrence."""
    return _info(t)[id(t)][3]


def tin_cograph(g: Graph, budget: SearchBudget | None = None):
    """Exact decomposition independence for a four-path-free graph, or
    the path certificate when g is outside the class."""
    if g.n == 0:
        return 0
    got = build_cotree(g, budget)
    if isinstance(got, Certificate):
        return got
    return max(ibn_cotree(got), 1)


def decompose_cograph(g: Graph, budget: SearchBudget | None = None):
    """Tree decomposition achieving the exact bound of
    :func:`tin_cograph`, or the path certificate.

    Unions hang their parts off an empty hub bag; a join recurses into
    the child with the largest independence number and spreads every
    other child's vertices over all bags.  Ties go to the child with
    more vertices, then the earliest child.
    """
    budget = ensure_budget(budget)
    if g.n == 0:
        return TreeDecomposition(g, [frozenset()], [])
    got = build_cotree(g, budget)
    if isinstance(got, Certificate):
        return got
    info = _info(got)

    root_slot: list[TreeDecomposition] = []
    FINISH_UNION, FINISH_JOIN = 0, 1
    stack: list = [("visit", got, root_slot)]
    while stack:
        item = stack.pop()
        if item[0] == "visit":
            _, node, out = item
            budget.spend()
            if node.kind == "leaf":
                out.append(TreeDecomposition(
                    g, [frozenset((node.vertex,))], (),
                    (node.vertex,),
                ))
                continue
            if node.kind == "union":
                slots = [[] for _ in node.children]
                stack.append((FINISH_UNION, slots, out))
                for child, slot in zip(
                    reversed(node.children), reversed(slots)
                ):
                    stack.append(("visit", child, slot))
                continue
            best = None
            best_key = None
            for child in node.children:
                _, _, calpha, _ = info[id(child)]
                key = (calpha, info[id(child)][0])
                if best_key is None or key > best_key:
                    best, best_key = child, key
            others = info[id(node)][1] & ~info[id(best)][1]
            slot: list = []
            stack.append((FINISH_JOIN, slot, others, out))
            stack.append(("visit", best, slot))
        elif item[0] == FINISH_UNION:
            _, slots, out = item
            parts = [s[0] for s in slots]
            out.append(merge_at_hub(g, parts, frozenset()))
        else:
            _, slot, others, out = item
            out.append(add_to_all_bags(slot[0], bit_list(others)))
    td = root_slot[0]
    if g.n <= _VALIDATE_LIMIT:
        ok, why = validate(g, td)
        if not ok:
            raise InternalError(f"cotree decomposition invalid: {why}")
    return td


def cotree_to_json(t: Cotree):
    """Nested object form: leaves as {"leaf": v}, inner nodes as
    {"union": [...]} or {"join": [...]}."""
    root_slot: list = []
    stack = [(t, root_slot)]
    while stack:
        node, out = stack.pop()
        if node.kind == "leaf":
            out.append({"leaf": node.vertex})
            continue
        kids: list = []
        out.append({node.kind: kids})
        for child in reversed(node.children):
            stack.append((child, kids))
    return root_slot[0]


def cotree_from_json(data) -> Cotree:
    """Parse the nested object form, checking arity and alternation."""
    root_slot: list[Cotree] = []
    stack = [(data, root_slot, None)]
    while stack:
        obj, out, parent_kind = stack.pop()
        if not isinstance(obj, dict) or len(obj) != 1:
            raise GraphError("cotree nodes are single-key objects")
        key, value = next(iter(obj.items()))
        if key == "leaf":
            if not isinstance(value, int) or value < 0:
                raise GraphError("leaf vertices are nonnegative integers")
            out.append(Cotree("leaf", vertex=value))
            continue
        if key not in ("union", "join"):
            raise GraphError(f"unknown cotree label {key!r}")
        if key == parent_kind:
            raise GraphError("cotree labels must alternate")
        if not isinstance(value, list) or len(value) < 2:
            raise GraphError("cotree inner nodes need two children")
        node = Cotree(key)
        out.append(node)
        for child in reversed(value):
            stack.append((child, node.children, key))
    return root_slot[0]


def random_cograph(n: int, rng) -> Graph:
    """Random graph built from a random cotree on n leaves.

    The cotree is sampled top down: each block of vertices splits into
    between two and four parts, labels alternate starting from a random
    root label, and leaves claim consecutive indices, so adjacency rows
    are whole-interval masks.
    """
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    h = Graph(n)
    if n <= 1:
        return h
    interval = lambda lo, hi: (1 << hi) - (1 << lo)
    top = rng.choice(("union", "join"))
    stack = [(0, n, top)]
    while stack:
        lo, hi, label = stack.pop()
        size = hi - lo
        if size == 1:
            continue
        k = rng.randint(2, min(size, 4))
        cuts = sorted(rng.sample(range(lo + 1, hi), k - 1))
        bounds = [lo, *cuts, hi]
        child_label = "join" if label == "union" else "union"
        whole = interval(lo, hi)
        for a, b in zip(bounds, bounds[1:]):
            if label == "join":
                others = whole ^ interval(a, b)
                for v in range(a, b):
                    h._adj[v] |= others
            stack.append((a, b, child_label))
    return h
