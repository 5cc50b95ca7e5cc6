"""Undirected simple graphs on dense integer vertices.

Vertices are 0..n-1.  Adjacency is one Python int per vertex used as a
bitset, which makes neighborhood intersection, masking and component
sweeps cheap at the sizes this package targets.  Graph values are never
mutated after construction, so they can be shared freely.

Also here: the graph generators used by the decomposers and their tests,
vertex set utilities, induced minor models, a canonical form for tiny
graphs, and readers and writers for the .gr exchange format (header
``p tw n m``, one ``u v`` line per edge, 1-indexed).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import FormatError, GraphError


def bits_of(vertices) -> int:
    """Pack an iterable of vertex indices into a bitset."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int):
    """Yield the set bit positions of a bitset in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


class Graph:
    """Immutable simple graph with bitset adjacency rows."""

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        adj = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop ({u}, {v}) is not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = adj

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self._adj) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adj_bits(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> list[int]:
        return bit_list(self._adj[v])

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            rest = self._adj[u] >> (u + 1) << (u + 1)
            for v in iter_bits(rest):
                out.append((u, v))
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self):
        return hash((self.n, tuple(self._adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def make_graph(n: int, edges=()) -> Graph:
    """Build a graph, validating vertex range and rejecting self-loops."""
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# basic operations


def complement(g: Graph) -> Graph:
    h = Graph(g.n)
    full = g.full_mask
    for v in range(g.n):
        h._adj[v] = full & ~g._adj[v] & ~(1 << v)
    return h


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; the second graph's vertices are shifted by g1.n."""
    h = Graph(g1.n + g2.n)
    h._adj[: g1.n] = g1._adj
    for v in range(g2.n):
        h._adj[g1.n + v] = g2._adj[v] << g1.n
    return h


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus all edges between the two sides."""
    h = disjoint_union(g1, g2)
    left = (1 << g1.n) - 1
    right = ((1 << g2.n) - 1) << g1.n
    for v in range(g1.n):
        h._adj[v] |= right
    for v in range(g1.n, h.n):
        h._adj[v] |= left
    return h


def line_graph(g: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Line graph plus the list mapping each new vertex to its source edge.

    Edges of g are enumerated in sorted order (u < v, lexicographic), and
    that order fixes the vertex numbering of the result.
    """
    edge_list = g.edges()
    index = {e: i for i, e in enumerate(edge_list)}
    h = Graph(len(edge_list))
    for v in range(g.n):
        incident = [index[(min(v, u), max(v, u))] for u in g.neighbors(v)]
        for a, b in combinations(incident, 2):
            h._adj[a] |= 1 << b
            h._adj[b] |= 1 << a
    return h, edge_list


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, list[int]]:
    """Induced subgraph plus the list mapping new indices to old vertices."""
    old = sorted(set(vertices))
    for v in old:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(old)}
    h = Graph(len(old))
    for i, v in enumerate(old):
        for u in iter_bits(g._adj[v]):
            j = pos.get(u)
            if j is not None and j > i:
                h._adj[i] |= 1 << j
                h._adj[j] |= 1 << i
    return h, old


# ---------------------------------------------------------------------------
# traversal utilities


def component_bits(g: Graph, within: int | None = None) -> list[int]:
    """Connected components, each as a bitset, restricted to ``within``."""
    remaining = g.full_mask if within is None else within
    out = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= g._adj[v]
            frontier = reach & remaining & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def components(g: Graph) -> list[set[int]]:
    """Connected components as vertex sets, ordered by smallest member."""
    return [set(iter_bits(c)) for c in component_bits(g)]


def is_connected(g: Graph, within: int | None = None) -> bool:
    mask = g.full_mask if within is None else within
    if mask == 0:
        return True
    return len(component_bits(g, mask)) == 1


def closed_neighborhood_bits(g: Graph, mask: int) -> int:
    out = mask
    for v in iter_bits(mask):
        out |= g._adj[v]
    return out


def closed_neighborhood(g: Graph, vertices) -> set[int]:
    """The vertices together with all their neighbors."""
    return set(iter_bits(closed_neighborhood_bits(g, bits_of(vertices))))


def shortest_xy_path(g: Graph, xs, ys) -> list[int] | None:
    """Shortest path from the set X to the set Y with no internal vertex
    in X or Y.  Returns the vertex list, or None when no such path exists.

    A vertex in both sets is itself a path of length zero.
    """
    xbits = bits_of(xs)
    ybits = bits_of(ys)
    both = xbits & ybits
    if both:
        return [(both & -both).bit_length() - 1]
    if not xbits or not ybits:
        return None
    blocked = xbits | ybits
    parent: dict[int, int | None] = {}
    frontier = []
    for v in iter_bits(xbits):
        parent[v] = None
        frontier.append(v)
    while frontier:
        nxt = []
        for v in frontier:
            hit = g._adj[v] & ybits
            if hit:
                y = (hit & -hit).bit_length() - 1
                path = [y, v]
                while parent[v] is not None:
                    v = parent[v]
                    path.append(v)
                path.reverse()
                return path
            for u in iter_bits(g._adj[v] & ~blocked):
                if u not in parent:
                    parent[u] = v
                    nxt.append(u)
        frontier = nxt
    return None


def is_induced_path(g: Graph, seq) -> bool:
    """True when seq is a repetition-free induced path of g."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return False
    for i, u in enumerate(seq):
        for j in range(i + 1, len(seq)):
            if g.has_edge(u, seq[j]) != (j == i + 1):
                return False
    return True


def is_induced_cycle(g: Graph, seq) -> bool:
    """True when seq lists an induced cycle of length >= 3 in cyclic order."""
    seq = list(seq)
    k = len(seq)
    if k < 3 or len(set(seq)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            expected = j - i == 1 or (i == 0 and j == k - 1)
            if g.has_edge(seq[i], seq[j]) != expected:
                return False
    return True


# ---------------------------------------------------------------------------
# generators


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def gen_spqr(p: int, q: int, r: int) -> Graph:
    """Spider with three legs of p, q and r edges hanging off vertex 0.

    Vertex order is branch-major: 0 is the center, 1..p the first leg
    outward, then the second leg, then the third.
    """
    if min(p, q, r) < 1:
        raise GraphError("each leg needs at least one edge")
    edges = []
    nxt = 1
    for leg in (p, q, r):
        prev = 0
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def gen_tpqr(p: int, q: int, r: int) -> Graph:
    """Line graph of the three-leg spider; a triangle with three tails."""
    h, _ = line_graph(gen_spqr(p, q, r))
    return h


def gen_wall(k: int) -> Graph:
    """Elementary wall with k rows.

    Start from the k by 2k grid, delete every odd vertical edge in odd
    columns and every even vertical edge in even columns (1-indexed), then
    drop the vertices this leaves with degree one.  Surviving vertices are
    numbered row-major.
    """
    if k < 3:
        raise GraphError(f"wall needs k >= 3, got {k}")
    rows, cols = k, 2 * k
    idx = lambda r, c: r * cols + c
    edges = []
    for r in range(rows):
        for c in range(cols - 1):
            edges.append((idx(r, c), idx(r, c + 1)))
    for c in range(cols):
        for r in range(rows - 1):
            # vertical edge r is odd iff r+1 odd; column c odd iff c+1 odd
            edge_odd = (r + 1) % 2 == 1
            col_odd = (c + 1) % 2 == 1
            if edge_odd != col_odd:
                edges.append((idx(r, c), idx(r + 1, c)))
    grid = Graph(rows * cols, edges)
    keep = [v for v in range(grid.n) if grid.degree(v) >= 2]
    wall, _ = induced_subgraph(grid, keep)
    if any(wall.degree(v) <= 1 for v in range(wall.n)):
        raise GraphError("wall construction left a low-degree vertex")
    return wall


@dataclass(frozen=True)
class GnWitness:
    """Subdivided clique with its two-colored edges.

    ``graph`` replaces every edge of a complete graph on ``core`` by two
    paths of length two.  Each of the four-cycles this creates is properly
    two-colored, so every core vertex sees n-1 red and n-1 blue edges.
    ``pairs`` maps each added vertex to the core pair it subdivides.
    """

    graph: Graph
    core: tuple[int, ...]
    red_edges: frozenset[tuple[int, int]]
    blue_edges: frozenset[tuple[int, int]]
    pairs: tuple[tuple[int, int], ...]


def gen_Gn(n: int) -> GnWitness:
    if n < 3:
        raise GraphError(f"witness family needs n >= 3, got {n}")
    edges = []
    red = set()
    blue = set()
    pairs = []
    nxt = n
    for u, v in combinations(range(n), 2):
        w1, w2 = nxt, nxt + 1
        nxt += 2
        pairs.extend([(u, v), (u, v)])
        edges.extend([(u, w1), (w1, v), (u, w2), (w2, v)])
        red.update({(u, w1), (v, w2)})
        blue.update({(v, w1), (u, w2)})
    g = Graph(nxt, edges)
    norm = lambda s: frozenset((min(a, b), max(a, b)) for a, b in s)
    return GnWitness(g, tuple(range(n)), norm(red), norm(blue), tuple(pairs))


# ---------------------------------------------------------------------------
# induced minor models


@dataclass(frozen=True)
class MinorModel:
    """Branch sets witnessing a pattern as an induced minor of a host."""

    pattern: Graph
    branch_sets: tuple[frozenset[int], ...]

    def to_json(self) -> dict:
        return {
            "pattern": {"n": self.pattern.n, "edges": self.pattern.edges()},
            "branch_sets": [sorted(s) for s in self.branch_sets],
        }


def verify_induced_minor_model(
    g: Graph, h: Graph, branch_sets
) -> tuple[bool, str | None]:
    """Check disjointness, connectivity and exact adjacency of a model.

    Contracting each branch set must yield the pattern h exactly: an edge
    between two branch sets in g iff the corresponding pattern edge exists.
    Returns (True, None) or (False, reason).
    """
    sets = [frozenset(s) for s in branch_sets]
    if len(sets) != h.n:
        return False, f"expected {h.n} branch sets, got {len(sets)}"
    masks = []
    for i, s in enumerate(sets):
        if not s:
            return False, f"branch set {i} is empty"
        for v in s:
            if not 0 <= v < g.n:
                return False, f"branch set {i} has out-of-range vertex {v}"
        m = bits_of(s)
        if not is_connected(g, m):
            return False, f"branch set {i} is not connected"
        masks.append(m)
    for i in range(h.n):
        for j in range(i + 1, h.n):
            if masks[i] & masks[j]:
                return False, f"branch sets {i} and {j} overlap"
            touching = closed_neighborhood_bits(g, masks[i]) & masks[j]
            if bool(touching) != h.has_edge(i, j):
                want = "an edge" if h.has_edge(i, j) else "no edge"
                return False, (
                    f"adjacency ({i}, {j}): expected {want} between the"
                    " branch sets"
                )
    return True, None


# ---------------------------------------------------------------------------
# canonical form for tiny graphs


def canonical_form(g: Graph) -> int:
    """Minimum upper-triangle bit packing over all vertex permutations.

    Only for n <= 8; intended for isomorphism checks in tests.  Bit t of
    the result corresponds to the t-th pair (i, j), i < j, in
    lexicographic order.
    """
    n = g.n
    if n > 8:
        raise GraphError(f"canonical form supports n <= 8 only, got {n}")
    pair_index = {}
    for t, (i, j) in enumerate(combinations(range(n), 2)):
        pair_index[(i, j)] = t
    edges = g.edges()
    best = None
    for perm in permutations(range(n)):
        code = 0
        for u, v in edges:
            a, b = perm[u], perm[v]
            if a > b:
                a, b = b, a
            code |= 1 << pair_index[(a, b)]
        if best is None or code < best:
            best = code
    return best if best is not None else 0


# ---------------------------------------------------------------------------
# .gr exchange format


def loads_gr(text: str) -> Graph:
    n = None
    m_declared = 0
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate p line")
            if len(parts) != 4 or parts[1] != "tw":
                raise FormatError(
                    f"line {lineno}: expected 'p tw <n> <m>', got {line!r}"
                )
            try:
                n = int(parts[2])
                m_declared = int(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: bad header numbers")
            if n < 0 or m_declared < 0:
                raise FormatError(f"line {lineno}: negative header numbers")
            continue
        if n is None:
            raise FormatError(f"line {lineno}: edge before p line")
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: bad edge numbers")
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(
                f"line {lineno}: edge ({u}, {v}) out of range for n={n}"
            )
        if u == v:
            raise FormatError(f"line {lineno}: self-loop ({u}, {v})")
        edges.append((u - 1, v - 1))
    if n is None:
        raise FormatError("missing p line")
    g = Graph(n, edges)
    if g.edge_count != m_declared:
        raise FormatError(
            f"header declares {m_declared} edges, file has {g.edge_count}"
        )
    return g


def dumps_gr(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.edge_count}"]
    for u, v in g.edges():
        lines.append(f"{u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def read_gr(path) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return loads_gr(fh.read())


def write_gr(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_gr(g))
