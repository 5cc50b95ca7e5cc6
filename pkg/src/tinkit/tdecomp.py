"""Tree decompositions: the type, validation, measures, combinators, IO.

A TreeDecomposition holds the graph it claims to decompose, its bags, and
the tree edges over dense node ids 0..b-1.  ``vertices`` restricts the
claim to an induced subgraph, which is how the decomposers carry partial
results; None means the whole graph.  Empty bags are allowed, and the
null graph is decomposed by one empty bag of width -1.

The .td exchange format is the usual one: header ``s td <bags> <max bag
size> <n>``, ``b <id> <vertices...>`` lines, then one tree edge per line,
everything 1-indexed.  Writing is canonical, so write, read, write is
byte stable.
"""

from __future__ import annotations

from .budget import SearchBudget, ensure_budget
from .errors import DecompositionError, FormatError
from . import oracle
from .graph import Graph, bits_of, iter_bits


class TreeDecomposition:
    __slots__ = ("graph", "bags", "tree_edges", "vertices")

    def __init__(self, graph: Graph, bags, tree_edges, vertices=None):
        self.graph = graph
        self.bags = tuple(frozenset(b) for b in bags)
        self.tree_edges = tuple(
            (min(i, j), max(i, j)) for i, j in tree_edges
        )
        if vertices is not None:
            vertices = frozenset(vertices)
            if len(vertices) == graph.n and graph.n > 0:
                vertices = None
        self.vertices = vertices

    @property
    def node_count(self) -> int:
        return len(self.bags)

    def coverage(self) -> frozenset[int]:
        if self.vertices is None:
            return frozenset(range(self.graph.n))
        return self.vertices

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(nodes={self.node_count},"
            f" width={width(self)})"
        )


class PathDecomposition(TreeDecomposition):
    """Tree decomposition whose tree is the path 0, 1, .., b-1 in order."""

    def __init__(self, graph: Graph, bags_in_order, vertices=None):
        bags_in_order = list(bags_in_order)
        edges = [(i, i + 1) for i in range(len(bags_in_order) - 1)]
        super().__init__(graph, bags_in_order, edges, vertices)


def width(td: TreeDecomposition) -> int:
    """Largest bag size minus one; -1 for a single empty bag."""
    return max(len(b) for b in td.bags) - 1


def _tree_adjacency(td: TreeDecomposition) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(td.node_count)]
    for i, j in td.tree_edges:
        adj[i].append(j)
        adj[j].append(i)
    return adj


def validate(g: Graph, td: TreeDecomposition) -> tuple[bool, str | None]:
    """Check the three axioms plus tree shape; returns (ok, witness).

    The witness string names the failed axiom and an offending vertex or
    edge.  Coverage is td.vertices when set, else all of g.
    """
    b = td.node_count
    if b == 0:
        return False, "tree: a decomposition needs at least one node"
    if td.graph is not g:
        if td.graph != g:
            return False, "tree: decomposition references a different graph"
    cover = td.coverage()
    cover_bits = bits_of(cover)
    for idx, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return False, f"bag {idx}: vertex {v} out of range"
            if not cover_bits >> v & 1:
                return False, f"bag {idx}: vertex {v} outside coverage"
    seen = set()
    for i, j in td.tree_edges:
        if not (0 <= i < b and 0 <= j < b):
            return False, f"tree: edge ({i}, {j}) out of range"
        if i == j:
            return False, f"tree: self-loop at node {i}"
        if (i, j) in seen:
            return False, f"tree: duplicate edge ({i}, {j})"
        seen.add((i, j))
    if len(td.tree_edges) != b - 1:
        return False, "tree: edge count is not nodes minus one"
    adj = _tree_adjacency(td)
    reached = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in reached:
                reached.add(y)
                stack.append(y)
    if len(reached) != b:
        return False, "tree: not connected"
    bag_bits = [bits_of(bag) for bag in td.bags]
    union = 0
    for m in bag_bits:
        union |= m
    missing = cover_bits & ~union
    if missing:
        v = (missing & -missing).bit_length() - 1
        return False, f"vertex coverage: vertex {v} is in no bag"
    for u in cover:
        for v in iter_bits(g.adj_bits(u) & cover_bits):
            if v <= u:
                continue
            needed = (1 << u) | (1 << v)
            if not any(m & needed == needed for m in bag_bits):
                return False, f"edge coverage: edge ({u}, {v}) is in no bag"
    for v in cover:
        holding = [i for i in range(b) if bag_bits[i] >> v & 1]
        reached = {holding[0]}
        stack = [holding[0]]
        holding_set = set(holding)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in holding_set and y not in reached:
                    reached.add(y)
                    stack.append(y)
        if len(reached) != len(holding):
            return False, (
                f"subtree connectivity: the nodes holding vertex {v} are"
                " disconnected"
            )
    return True, None


def independence_number(
    g: Graph, td: TreeDecomposition, budget: SearchBudget | None = None
) -> int:
    """Largest independence number over the bags; validates first."""
    ok, why = validate(g, td)
    if not ok:
        raise DecompositionError(why)
    budget = ensure_budget(budget)
    best = 0
    for bag in td.bags:
        a = oracle.alpha_exact(g, within=bag, budget=budget)
        if a > best:
            best = a
    return best


# ---------------------------------------------------------------------------
# combinators


def add_to_all_bags(td: TreeDecomposition, extra) -> TreeDecomposition:
    """Union a vertex set into every bag; coverage grows by that set."""
    extra = frozenset(extra)
    for v in extra:
        if not 0 <= v < td.graph.n:
            raise DecompositionError(f"vertex {v} out of range")
    if td.vertices is None:
        vertices = None
    else:
        vertices = td.vertices | extra
    return TreeDecomposition(
        td.graph,
        [bag | extra for bag in td.bags],
        td.tree_edges,
        vertices,
    )


def merge_at_hub(
    g: Graph, parts, hub, add_hub_to_parts: bool = False
) -> TreeDecomposition:
    """Join decompositions of disjoint vertex sets through one hub bag.

    A new node carrying the hub set becomes node 0 and is wired to node 0
    of every part.  With add_hub_to_parts the hub is also unioned into
    every part bag first.
    """
    hub = frozenset(hub)
    parts = list(parts)
    taken = 0
    for idx, part in enumerate(parts):
        cb = bits_of(part.coverage())
        if cb & taken:
            v = (cb & taken).bit_length() - 1
            raise DecompositionError(
                f"parts overlap: vertex {v} appears twice (part {idx})"
            )
        taken |= cb
    bags = [hub]
    edges = []
    cover = set(hub)
    offset = 1
    for part in parts:
        pb = part.bags
        if add_hub_to_parts:
            pb = [bag | hub for bag in pb]
        bags.extend(pb)
        edges.extend(
            (offset + i, offset + j) for i, j in part.tree_edges
        )
        edges.append((0, offset))
        cover.update(part.coverage())
        offset += part.node_count
    return TreeDecomposition(g, bags, edges, cover)


def attach_subtree(
    td: TreeDecomposition,
    node: int,
    child: TreeDecomposition,
    absorb,
) -> TreeDecomposition:
    """Hang a decomposition of a fresh vertex set under one node.

    The child's bags are unioned with ``absorb`` and its tree is wired to
    ``node``.  Validity is preserved because absorb must sit inside the
    host bag and must catch every edge leaving the child's vertices.
    """
    absorb = frozenset(absorb)
    if not 0 <= node < td.node_count:
        raise DecompositionError(f"node {node} out of range")
    if not absorb <= td.bags[node]:
        v = next(iter(absorb - td.bags[node]))
        raise DecompositionError(
            f"absorb vertex {v} is not in the bag of node {node}"
        )
    g = td.graph
    child_bits = bits_of(child.coverage())
    host_bits = bits_of(td.coverage())
    if child_bits & host_bits:
        v = (child_bits & host_bits).bit_length() - 1
        raise DecompositionError(
            f"child vertex {v} already covered by the host decomposition"
        )
    absorb_bits = bits_of(absorb)
    for u in iter_bits(child_bits):
        out = g.adj_bits(u) & ~child_bits & ~absorb_bits
        if out:
            v = (out & -out).bit_length() - 1
            raise DecompositionError(
                f"edge ({u}, {v}) leaves the child but {v} is not absorbed"
            )
    bags = list(td.bags) + [bag | absorb for bag in child.bags]
    offset = td.node_count
    edges = list(td.tree_edges)
    edges.extend((offset + i, offset + j) for i, j in child.tree_edges)
    edges.append((node, offset))
    cover = td.coverage() | child.coverage() | absorb
    return TreeDecomposition(g, bags, edges, cover)


# ---------------------------------------------------------------------------
# .td exchange format


def loads_td(text: str, g: Graph) -> TreeDecomposition:
    header = None
    bag_map: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise FormatError(f"line {lineno}: duplicate s line")
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(
                    f"line {lineno}: expected 's td <bags> <size> <n>'"
                )
            try:
                header = tuple(int(x) for x in parts[2:])
            except ValueError:
                raise FormatError(f"line {lineno}: bad header numbers")
            continue
        if header is None:
            raise FormatError(f"line {lineno}: content before s line")
        if parts[0] == "b":
            try:
                nums = [int(x) for x in parts[1:]]
            except ValueError:
                raise FormatError(f"line {lineno}: bad bag numbers")
            if not nums:
                raise FormatError(f"line {lineno}: bag line without id")
            bid, verts = nums[0], nums[1:]
            if verts and verts[-1] == 0:
                verts = verts[:-1]
            if not 1 <= bid <= header[0]:
                raise FormatError(f"line {lineno}: bag id {bid} out of range")
            if bid in bag_map:
                raise FormatError(f"line {lineno}: duplicate bag {bid}")
            for v in verts:
                if not 1 <= v <= header[2]:
                    raise FormatError(
                        f"line {lineno}: vertex {v} out of range"
                    )
            bag_map[bid] = frozenset(v - 1 for v in verts)
            continue
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected tree edge 'i j'")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: bad tree edge numbers")
        if not (1 <= i <= header[0] and 1 <= j <= header[0]):
            raise FormatError(
                f"line {lineno}: tree edge ({i}, {j}) out of range"
            )
        edges.append((i - 1, j - 1))
    if header is None:
        raise FormatError("missing s line")
    n_bags, max_size, n = header
    if n != g.n:
        raise FormatError(
            f"header graph size {n} does not match graph n={g.n}"
        )
    if len(bag_map) != n_bags:
        missing = sorted(set(range(1, n_bags + 1)) - set(bag_map))
        raise FormatError(f"missing bag lines: {missing}")
    bags = [bag_map[i] for i in range(1, n_bags + 1)]
    if bags and max(len(b) for b in bags) != max_size:
        raise FormatError(
            f"header bag size {max_size} does not match bags"
        )
    return TreeDecomposition(g, bags, edges)


def dumps_td(td: TreeDecomposition) -> str:
    size = max(len(b) for b in td.bags)
    lines = [f"s td {td.node_count} {size} {td.graph.n}"]
    for i, bag in enumerate(td.bags, start=1):
        body = " ".join(str(v + 1) for v in sorted(bag))
        lines.append(f"b {i} {body}".rstrip())
    for i, j in sorted(td.tree_edges):
        lines.append(f"{i + 1} {j + 1}")
    return "\n".join(lines) + "\n"


def read_td(path, g: Graph) -> TreeDecomposition:
    with open(path, "r", encoding="ascii") as fh:
        return loads_td(fh.read(), g)


def write_td(td: TreeDecomposition, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_td(td))
