"""Forbidden-structure certificates and the searches that produce them.

A certificate pins a concrete induced copy of a named pattern inside a
host graph: a star K_{1,d}, an induced path or cycle, a subdivided claw
(three legs of equal length p hanging off one center), its line graph,
or several vertex-disjoint copies of those.  Decomposers hand back a
certificate instead of a decomposition when the input lies outside
their target class, and every certificate re-validates with an exact
induced-subgraph check that does not trust the search that built it.

The second half of the module analyses how a single outside vertex
interacts with an induced path: the maximal subpaths avoiding its
neighborhood, long such subpaths, the window of the path spanned by
its neighbors, and the window enlarged enough to catch everything a
nearby component attaches to.  Each helper either returns the promised
structure or a certificate explaining why the graph cannot be in the
class the caller is decomposing.
"""

from __future__ import annotations

from collections import namedtuple

from . import oracle
from .budget import SearchBudget, ensure_budget
from .errors import GraphError, InternalError
from .graph import (
    Graph,
    bit_list,
    bits_of,
    closed_neighborhood_bits,
    complete_bipartite,
    cycle_graph,
    disjoint_union,
    gen_spqr,
    gen_tpqr,
    induced_subgraph,
    is_connected,
    is_induced_cycle,
    is_induced_path,
    iter_bits,
    path_graph,
    shortest_xy_path,
)

PATTERN_KINDS = (
    "star",
    "path",
    "cycle",
    "s_p",
    "t_p",
    "k_s_p",
    "k_t_p",
    "generic",
)


def pattern_graph(kind: str, params: dict) -> Graph:
    """The abstract graph a certificate of this kind claims to embed.

    Parameter keys by kind: star {leaves}, path/cycle {vertices},
    s_p/t_p {p}, k_s_p/k_t_p {k, p}, generic {n, edges}.
    """
    if kind == "star":
        d = int(params["leaves"])
        if d < 1:
            raise GraphError(f"star needs at least one leaf, got {d}")
        return complete_bipartite(1, d)
    if kind == "path":
        ln = int(params["vertices"])
        if ln < 1:
            raise GraphError(f"path needs at least one vertex, got {ln}")
        return path_graph(ln)
    if kind == "cycle":
        ln = int(params["vertices"])
        return cycle_graph(ln)
    if kind in ("s_p", "t_p"):
        p = int(params["p"])
        if p < 1:
            raise GraphError(f"leg length must be positive, got {p}")
        return gen_spqr(p, p, p) if kind == "s_p" else gen_tpqr(p, p, p)
    if kind in ("k_s_p", "k_t_p"):
        k = int(params["k"])
        p = int(params["p"])
        if k < 1:
            raise GraphError(f"copy count must be positive, got {k}")
        one = gen_spqr(p, p, p) if kind == "k_s_p" else gen_tpqr(p, p, p)
        out = one
        for _ in range(k - 1):
            out = disjoint_union(out, one)
        return out
    if kind == "generic":
        return Graph(int(params["n"]), [tuple(e) for e in params["edges"]])
    raise GraphError(f"unknown pattern kind {kind!r}")


class Certificate:
    """A claimed induced embedding of a named pattern in a host graph.

    ``embedding[i]`` is the host vertex playing pattern vertex i, in the
    vertex order of :func:`pattern_graph`.  ``validated`` records whether
    :meth:`validate` has run and passed; serialization carries it along
    so downstream consumers know what was checked.
    """

    __slots__ = ("kind", "params", "embedding", "graph", "validated")

    def __init__(self, kind, params, embedding, graph: Graph):
        self.kind = kind
        self.params = dict(params)
        self.embedding = tuple(int(v) for v in embedding)
        self.graph = graph
        self.validated = False

    def validate(self) -> tuple[bool, str | None]:
        """Exact induced-subgraph check of the embedding, trusting nothing."""
        self.validated = False
        try:
            pat = pattern_graph(self.kind, self.params)
        except (GraphError, KeyError, TypeError, ValueError) as exc:
            return False, f"bad pattern parameters: {exc}"
        emb = self.embedding
        if len(emb) != pat.n:
            return False, (
                f"embedding has {len(emb)} vertices, pattern needs {pat.n}"
            )
        g = self.graph
        for v in emb:
            if not 0 <= v < g.n:
                return False, f"embedded vertex {v} out of range"
        if len(set(emb)) != len(emb):
            return False, "embedding repeats a host vertex"
        for i in range(pat.n):
            for j in range(i + 1, pat.n):
                have = g.has_edge(emb[i], emb[j])
                want = pat.has_edge(i, j)
                if have != want:
                    kindw = "an edge" if want else "no edge"
                    return False, (
                        f"pattern pair ({i}, {j}) maps to ({emb[i]},"
                        f" {emb[j]}) which should carry {kindw}"
                    )
        self.validated = True
        return True, None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "embedding": list(self.embedding),
            "validated": self.validated,
        }

    @classmethod
    def from_json(cls, data: dict, graph: Graph) -> "Certificate":
        cert = cls(data["kind"], data["params"], data["embedding"], graph)
        if data.get("validated"):
            # the flag is a claim; re-earn it
            cert.validate()
        return cert

    def __repr__(self) -> str:
        flag = "validated" if self.validated else "unchecked"
        return (
            f"Certificate({self.kind}, params={self.params},"
            f" |embedding|={len(self.embedding)}, {flag})"
        )


def _minted(kind, params, embedding, g: Graph) -> Certificate:
    """Build a certificate from our own construction and insist it holds."""
    cert = Certificate(kind, params, embedding, g)
    ok, why = cert.validate()
    if not ok:
        raise InternalError(f"constructed a broken {kind} certificate: {why}")
    return cert


def star_certificate(g: Graph, center: int, leaves) -> Certificate:
    leaves = sorted(leaves)
    return _minted(
        "star", {"leaves": len(leaves)}, (center, *leaves), g
    )


def path_certificate(g: Graph, vertices) -> Certificate:
    vertices = list(vertices)
    return _minted("path", {"vertices": len(vertices)}, vertices, g)


def cycle_certificate(g: Graph, vertices) -> Certificate:
    vertices = list(vertices)
    return _minted("cycle", {"vertices": len(vertices)}, vertices, g)


def star_from_crowded_neighborhoods(
    g: Graph, centers, witness, d: int
) -> Certificate:
    """Turn an oversized independent set inside a union of closed
    neighborhoods into a star certificate.

    Every witness vertex must lie in N[c] for some center c; a witness
    bigger than (d-1) * len(centers) crowds d of its vertices onto one
    center, and members adjacent to that center are pairwise independent
    star leaves.  A center belonging to the witness occupies its own
    cell alone, so it never blocks the count.
    """
    centers = list(centers)
    cells: dict[int, list[int]] = {c: [] for c in centers}
    for u in sorted(witness):
        for c in centers:
            if u == c or g.has_edge(u, c):
                cells[c].append(u)
                break
        else:
            raise InternalError(
                "independent witness vertex escapes every center's"
                " closed neighborhood"
            )
    for c in centers:
        leaves = [u for u in cells[c] if u != c]
        if len(leaves) >= d:
            return star_certificate(g, c, leaves[:d])
    raise InternalError(
        "independence violation did not concentrate on any center"
    )


def _mask_of(g: Graph, within) -> int:
    if within is None:
        return g.full_mask
    if isinstance(within, int):
        return within
    return bits_of(within)


# ---------------------------------------------------------------------------
# exact searches


def find_induced_embedding(
    pattern: Graph,
    g: Graph,
    within=None,
    budget: SearchBudget | None = None,
) -> tuple[int, ...] | None:
    """Some exact induced embedding of ``pattern`` into g, or None.

    Backtracking over pattern vertices ordered so each new vertex has as
    many already-placed neighbors as possible; candidates are narrowed
    by bitset intersection against every placed vertex.  Deterministic:
    lowest-numbered host choices first.
    """
    budget = ensure_budget(budget)
    mask = _mask_of(g, within)
    k = pattern.n
    if k == 0:
        return ()
    if mask.bit_count() < k:
        return None

    remaining = set(range(k))
    first = max(remaining, key=lambda v: (pattern.degree(v), -v))
    order = [first]
    remaining.remove(first)
    while remaining:
        placed = bits_of(order)
        nxt = max(
            remaining,
            key=lambda v: (
                (pattern.adj_bits(v) & placed).bit_count(),
                pattern.degree(v),
                -v,
            ),
        )
        order.append(nxt)
        remaining.remove(nxt)

    deg_in_mask = [
        (g.adj_bits(v) & mask).bit_count() if mask >> v & 1 else -1
        for v in range(g.n)
    ]
    pat_deg = [pattern.degree(v) for v in range(k)]
    # adjacency of order[i] to each earlier order[t], precomputed
    earlier_adj = [
        [pattern.has_edge(order[i], order[t]) for t in range(i)]
        for i in range(k)
    ]

    assign = [0] * k

    def place(i: int, used: int) -> bool:
        budget.spend()
        if i == k:
            return True
        cand = mask & ~used
        row = earlier_adj[i]
        for t in range(i):
            hv = assign[t]
            if row[t]:
                cand &= g.adj_bits(hv)
            else:
                cand &= ~g.adj_bits(hv)
        need = pat_deg[order[i]]
        for hv in iter_bits(cand):
            if deg_in_mask[hv] < need:
                continue
            budget.spend()
            assign[i] = hv
            if place(i + 1, used | 1 << hv):
                return True
        return False

    if not place(0, 0):
        return None
    out = [0] * k
    for i, pv in enumerate(order):
        out[pv] = assign[i]
    return tuple(out)


def find_induced_star(
    g: Graph,
    d: int,
    within=None,
    budget: SearchBudget | None = None,
    center: int | None = None,
) -> Certificate | None:
    """An induced K_{1,d}, found center by center.

    The leaves are an independent d-subset of the center's neighborhood,
    which the independent-set oracle finds far faster than generic
    embedding search.  Centers are tried in ascending order unless one
    is pinned.
    """
    if d < 1:
        raise GraphError(f"star needs at least one leaf, got {d}")
    budget = ensure_budget(budget)
    mask = _mask_of(g, within)
    centers = [center] if center is not None else bit_list(mask)
    for c in centers:
        if not 0 <= c < g.n:
            raise GraphError(f"center {c} out of range")
        nb = g.adj_bits(c) & mask & ~(1 << c)
        if nb.bit_count() < d:
            continue
        leaves = oracle.independent_set_of_size(
            g, d, within=nb, budget=budget
        )
        if leaves is not None:
            return star_certificate(g, c, leaves)
    return None


def find_induced_path_geq(
    g: Graph,
    length: int,
    within=None,
    budget: SearchBudget | None = None,
) -> list[int] | None:
    """The first ``length`` vertices of some induced path with at least
    that many vertices, or None.

    Depth-first over extensions; a vertex extends the path only when it
    is adjacent to the last vertex and to nothing earlier.  Iterative so
    long targets cannot hit the recursion limit.
    """
    if length < 1:
        raise GraphError(f"path length must be positive, got {length}")
    budget = ensure_budget(budget)
    mask = _mask_of(g, within)
    if mask.bit_count() < length:
        return None
    if length == 1:
        return [(mask & -mask).bit_length() - 1]
    for start in iter_bits(mask):
        path = [start]
        forbid = [1 << start]
        cands = [iter_bits(g.adj_bits(start) & mask & ~(1 << start))]
        while cands:
            budget.spend()
            u = next(cands[-1], None)
            if u is None:
                cands.pop()
                path.pop()
                forbid.pop()
                continue
            last = path[-1]
            path.append(u)
            if len(path) == length:
                return path
            nf = forbid[-1] | g.adj_bits(last) | (1 << u)
            forbid.append(nf)
            cands.append(iter_bits(g.adj_bits(u) & mask & ~nf))
    return None


def find_long_induced_cycle(
    g: Graph,
    qmin: int,
    within=None,
    budget: SearchBudget | None = None,
) -> list[int] | None:
    """An induced cycle on at least ``qmin`` vertices, in cyclic order.

    Each candidate cycle is anchored at its minimum vertex, grown as an
    induced path whose interior avoids the anchor's neighborhood, and
    closed through any remaining common neighbor of the anchor and the
    path's far end.  The second vertex is kept below the closing vertex
    so each cycle is visited in one orientation only.
    """
    if qmin < 3:
        raise GraphError(f"cycles have at least 3 vertices, got {qmin}")
    budget = ensure_budget(budget)
    mask = _mask_of(g, within)
    if mask.bit_count() < qmin:
        return None
    for a in bit_list(mask):
        rest = mask & ~((1 << (a + 1)) - 1)
        if rest.bit_count() < qmin - 1:
            continue
        na = g.adj_bits(a) & rest
        if na.bit_count() < 2:
            continue
        for b2 in iter_bits(na):
            # path a, b2, ...; interior stays clear of N(a)
            path = [a, b2]
            above_b2 = rest & ~((1 << (b2 + 1)) - 1)
            ext = [(1 << a) | (1 << b2) | g.adj_bits(a)]
            mid = [(1 << a) | (1 << b2)]
            cands = [iter_bits(g.adj_bits(b2) & rest & ~ext[0])]
            while cands:
                budget.spend()
                last = path[-1]
                if len(path) + 1 >= qmin:
                    closers = (
                        g.adj_bits(last)
                        & g.adj_bits(a)
                        & above_b2
                        & ~mid[-1]
                    )
                    if closers:
                        c = (closers & -closers).bit_length() - 1
                        cyc = path + [c]
                        if not is_induced_cycle(g, cyc):
                            raise InternalError(
                                "cycle search closed a non-induced cycle"
                            )
                        return cyc
                u = next(cands[-1], None)
                if u is None:
                    cands.pop()
                    path.pop()
                    ext.pop()
                    mid.pop()
                    continue
                path.append(u)
                ne = ext[-1] | g.adj_bits(last) | (1 << u)
                nm = mid[-1] | g.adj_bits(last) | (1 << u)
                ext.append(ne)
                mid.append(nm)
                cands.append(iter_bits(g.adj_bits(u) & rest & ~ne))
    return None


# ---------------------------------------------------------------------------
# one vertex against an induced path


def neighbors_on_path(g: Graph, path, v: int) -> list[int]:
    """Positions (indices into ``path``) of the neighbors of v."""
    return [i for i, x in enumerate(path) if g.has_edge(v, x)]


def _check_path_context(g: Graph, path, v: int, cyclic: bool = False):
    path = list(path)
    for x in path:
        if not 0 <= x < g.n:
            raise GraphError(f"path vertex {x} out of range")
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    if v in path:
        raise GraphError(f"vertex {v} lies on the path itself")
    if cyclic:
        if not is_induced_cycle(g, path):
            raise GraphError("vertex sequence is not an induced cycle")
    elif not is_induced_path(g, path):
        raise GraphError("vertex sequence is not an induced path")
    return path


def segments_of_path(
    g: Graph, path, v: int, cyclic: bool = False
) -> list[list[int]]:
    """Maximal subpaths whose interior avoids the neighborhood of v.

    Segment ends are neighbors of v or ends of the path, every edge of
    the path lands in exactly one segment, and segments are returned in
    path order.  On a cycle the subpaths run between cyclically
    consecutive neighbors, so at least two neighbors are required; with
    exactly two adjacent neighbors one segment is the whole cycle the
    long way around.
    """
    path = _check_path_context(g, path, v, cyclic)
    m = len(path)
    pos = neighbors_on_path(g, path, v)
    if not cyclic:
        if not pos:
            raise GraphError(
                "no segments defined: the vertex has no neighbor on the path"
            )
        if m == 1:
            return []
        bounds = sorted({0, m - 1} | set(pos))
        return [
            path[bounds[i]: bounds[i + 1] + 1]
            for i in range(len(bounds) - 1)
        ]
    if len(pos) < 2:
        raise GraphError(
            "cyclic segments need at least two neighbors on the cycle"
        )
    out = []
    for t in range(len(pos)):
        i = pos[t]
        j = pos[(t + 1) % len(pos)]
        if t == len(pos) - 1:
            out.append(path[i:] + path[: j + 1])
        else:
            out.append(path[i: j + 1])
    return out


def long_segment(g: Graph, path, v: int, p: int, d: int):
    """A segment of the path holding at least p-1 non-neighbors of v, or
    a star certificate when no such segment exists.

    The path is cut into d blocks of p-1 vertices separated by single
    vertices, which needs at least d*p path vertices.  A block v fails
    to touch sits inside one segment, and that segment qualifies; if v
    touches all d blocks, one neighbor per block is an independent set
    of size d inside N(v) because distinct blocks are at path distance
    at least two.
    """
    if p < 1:
        raise GraphError(f"segment demand must be positive, got {p}")
    if d < 1:
        raise GraphError(f"block count must be positive, got {d}")
    path = _check_path_context(g, path, v)
    m = len(path)
    if m < d * p:
        raise GraphError(
            f"path has {m} vertices, the block argument needs {d * p}"
        )
    pos = set(neighbors_on_path(g, path, v))
    if not pos:
        return list(path)
    if p == 1:
        # any segment holds the required zero non-neighbors
        return segments_of_path(g, path, v)[0]
    untouched = None
    leaves = []
    for i in range(d):
        block = range(i * p, i * p + p - 1)
        hits = [t for t in block if t in pos]
        if not hits:
            untouched = block
            break
        leaves.append(path[hits[0]])
    if untouched is None:
        return star_certificate(g, v, leaves)
    bounds = sorted({0, m - 1} | pos)
    lo = max(b for b in bounds if b <= untouched.start)
    hi = min(b for b in bounds if b >= untouched.stop - 1)
    seg = path[lo: hi + 1]
    clear = sum(1 for t in range(lo, hi + 1) if t not in pos)
    if clear < p - 1:
        raise InternalError("an untouched block left a short segment")
    return seg


PathWindow = namedtuple("PathWindow", "lo hi vertices")

AttachmentInterval = namedtuple("AttachmentInterval", "lo hi vertices")


def path_interval(g: Graph, path, v: int, q: int, d: int):
    """The shortest subpath containing every neighbor of v, or a
    certificate when that window is too wide.

    With no induced cycle of length at least q in the ambient graph and
    no induced K_{1,d}, the window spans at most 2(d-1)(q-2) vertices.
    A wider window therefore yields either a long induced cycle (two
    consecutive neighbors far apart close one through v) or, when every
    consecutive gap is short, so many neighbors that alternate ones form
    d independent leaves of a star at v.
    """
    if d < 2:
        raise GraphError(
            f"the window bound needs d >= 2, got {d};"
            " a 1-star-free graph has no edges to analyse"
        )
    if q < 3:
        raise GraphError(f"cycle threshold must be at least 3, got {q}")
    path = _check_path_context(g, path, v)
    pos = neighbors_on_path(g, path, v)
    if not pos:
        raise GraphError("the vertex has no neighbor on the path")
    a, b = pos[0], pos[-1]
    if b - a + 1 <= 2 * (d - 1) * (q - 2):
        return PathWindow(a, b, path[a: b + 1])
    for t in range(len(pos) - 1):
        i, j = pos[t], pos[t + 1]
        if j - i >= q - 2:
            return cycle_certificate(g, [v] + path[i: j + 1])
    picks = [pos[0]]
    for x in pos[1:]:
        if x >= picks[-1] + 2:
            picks.append(x)
    if len(picks) >= d:
        return star_certificate(g, v, [path[x] for x in picks[:d]])
    raise InternalError(
        "neighbor window exceeded its bound without yielding a witness"
    )


def component_attachment_interval(
    g: Graph, path, h_vertices, v: int, q: int, d: int
):
    """The window of the path that catches every attachment of a nearby
    component, or a certificate.

    ``h_vertices`` must induce a connected piece of the graph with no
    vertex in the closed neighborhood of the path, and v must see both
    the component and the path.  Extending v's neighbor window by q
    positions on each side catches every vertex with a neighbor in the
    component; a vertex attached to the component but missing the
    extended window closes a long induced cycle through the component.
    """
    path = _check_path_context(g, path, v)
    m = len(path)
    h = sorted(set(h_vertices))
    if not h:
        raise GraphError("component is empty")
    for x in h:
        if not 0 <= x < g.n:
            raise GraphError(f"component vertex {x} out of range")
    hbits = bits_of(h)
    pbits = bits_of(path)
    if hbits & closed_neighborhood_bits(g, pbits):
        raise GraphError(
            "component touches the closed neighborhood of the path"
        )
    if not is_connected(g, hbits):
        raise GraphError("component vertices are not connected")
    if not g.adj_bits(v) & hbits:
        raise GraphError(f"vertex {v} has no neighbor in the component")
    if hbits >> v & 1:
        raise GraphError(f"vertex {v} lies inside the component")

    got = path_interval(g, path, v, q, d)
    if isinstance(got, Certificate):
        return got
    lo = max(0, got.lo - q)
    hi = min(m - 1, got.hi + q)
    window = path[lo: hi + 1]
    wbits = bits_of(window)

    attachers = bit_list(closed_neighborhood_bits(g, hbits) & ~hbits)
    for u in attachers:
        if g.adj_bits(u) & wbits:
            continue
        upos = neighbors_on_path(g, path, u)
        if not upos or pbits >> u & 1:
            raise InternalError(
                "attachment scan found a vertex outside the path's"
                " closed neighborhood"
            )
        sub, old_of_new = induced_subgraph(g, h + [u, v])
        back = {i: x for i, x in enumerate(old_of_new)}
        fwd = {x: i for i, x in enumerate(old_of_new)}
        r = shortest_xy_path(sub, [fwd[u]], [fwd[v]])
        if r is None:
            raise InternalError("component lost its link to the vertex")
        r = [back[i] for i in r]
        rint = r[1:-1]
        left = [t for t in upos if t < lo]
        right = [t for t in upos if t > hi]
        if left:
            w = max(left)
            cyc = [v] + list(reversed(rint)) + [u] + path[w: got.lo + 1]
        elif right:
            w = min(right)
            cyc = [v] + path[got.hi: w + 1] + [u] + rint
        else:
            raise InternalError(
                "attachment violator has no neighbor beyond the window"
            )
        if len(cyc) < q or not is_induced_cycle(g, cyc):
            raise InternalError(
                "attachment violation produced a malformed cycle"
            )
        return cycle_certificate(g, cyc)
    return AttachmentInterval(lo, hi, window)
