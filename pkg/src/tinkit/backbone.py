"""Decompositions for graphs excluding a star, a subdivided star, and
the subdivided star's line graph.

The entry point is :func:`decompose`.  Given degree bound ``d`` and leg
length ``p`` it either produces a tree decomposition whose bags all have
independence number at most ``alpha_bound(d, p)``, or a certificate: an
induced star with ``d`` leaves, an induced copy of the three-legged
spider with legs of length ``p``, or the line graph of that spider.

The construction grows a long induced path, fattens windows along it
into bags, and hangs everything that falls off the path back onto the
window where it attaches.  Every inequality the output relies on is
re-checked on the actual graph; a violation is converted into one of the
certificates above rather than reported as a bare failure.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import oracle, starpath
from .budget import SearchBudget, ensure_budget
from .errors import GraphError, InternalError
from .graph import (
    Graph,
    bit_list,
    bits_of,
    closed_neighborhood_bits,
    component_bits,
    induced_subgraph,
    is_induced_cycle,
    is_induced_path,
    iter_bits,
    shortest_xy_path,
)
from .patterns import (
    Certificate,
    component_attachment_interval,
    cycle_certificate,
    find_induced_embedding,
    find_induced_path_geq,
    long_segment,
    path_interval,
    pattern_graph,
    segments_of_path,
    star_certificate,
    star_from_crowded_neighborhoods,
)
from .tdecomp import (
    PathDecomposition,
    TreeDecomposition,
    add_to_all_bags,
    attach_subtree,
    merge_at_hub,
)


@dataclass(frozen=True)
class ClassParams:
    """Derived thresholds for the (d, p) graph class.

    All sizes below are functions of the two inputs; they are frozen
    here so every stage of the pipeline agrees on them.
    """

    d: int
    p: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise GraphError("the star must have at least two leaves")
        if self.p < 1:
            raise GraphError("legs must have at least one edge")
        if self.d >= 3:
            self._check_arithmetic()

    # cycles longer than this cannot survive near a long induced path
    @property
    def q(self) -> int:
        return 2 * self.d * (self.p + 1)

    # widest possible neighbor window of one vertex on an induced path
    @property
    def r(self) -> int:
        return 2 * (self.d - 1) * (self.q - 2)

    # window length used for the bags along the spine
    @property
    def h(self) -> int:
        return 2 * self.d * self.q

    # spine length whose neighborhood kills all long cycles
    @property
    def spine_len(self) -> int:
        return self.d * self.p

    # path length that triggers the improvement loop
    @property
    def comp_path_len(self) -> int:
        return 6 * self.d * self.q

    # path length inside an off-spine component that forces a rewire
    @property
    def branch_path_len(self) -> int:
        return self.d * (self.r + self.p - 1)

    @property
    def bound(self) -> int:
        """Guaranteed cap on every bag's independence number."""
        return 20 * (self.d - 1) ** 4 * (self.p + 1)

    def _check_arithmetic(self) -> None:
        # Each final bag is a union of at most three checked pieces, so
        # its independence number is at most the sum of the three caps.
        # These inequalities hold for every d >= 3, p >= 1; re-checking
        # them here protects the advertised bound against formula drift.
        d, p = self.d, self.p
        hub = (d - 1) * self.spine_len
        window = (d - 1) * self.h
        flat = (d - 1) * (self.comp_path_len - 2)
        branch = (d - 1) * (self.branch_path_len - 2)
        worst = max(window + hub, flat + hub, branch + window + hub)
        if worst > self.bound:
            raise InternalError(
                "bag arithmetic no longer meets the advertised bound"
            )
        if self.h < self.r + 2 * self.q:
            raise InternalError(
                "window length cannot swallow an attachment interval"
            )


def alpha_bound(d: int, p: int) -> int:
    """Bag independence bound achieved by :func:`decompose`."""
    return ClassParams(d, p).bound


def alpha_bound_k(d: int, p: int, k: int) -> int:
    """Bag independence bound achieved by :func:`decompose_k`."""
    if k < 1:
        raise GraphError("need at least one forbidden copy")
    return 6 * (d - 1) * (k - 1) * (p + 1) + ClassParams(d, p).bound


def _lift_td(td: TreeDecomposition, old, g: Graph) -> TreeDecomposition:
    """Relabel a decomposition of an induced subgraph back into g."""
    bags = [frozenset(old[v] for v in bag) for bag in td.bags]
    cover = {old[v] for v in td.coverage()}
    return TreeDecomposition(g, bags, td.tree_edges, cover)


def _lift_cert(cert: Certificate, old, g: Graph) -> Certificate:
    emb = [old[v] for v in cert.embedding]
    out = Certificate(cert.kind, cert.params, emb, g)
    ok, why = out.validate()
    if not ok:
        raise InternalError(f"certificate broke under relabeling: {why}")
    return out


def _spider_search(
    g: Graph,
    p: int,
    kinds,
    candidates,
    budget: SearchBudget,
    context: str,
) -> Certificate:
    """Exact pattern search over successively larger candidate sets.

    The first set is a trimmed core that provably contains the promised
    structure; the later ones only add slack.  Coming up empty after the
    last set means the surrounding argument is wrong, which is an
    internal error, never a property of the input.
    """
    for within in candidates:
        for kind in kinds:
            pat = pattern_graph(kind, {"p": p})
            emb = find_induced_embedding(pat, g, within=within, budget=budget)
            if emb is not None:
                cert = Certificate(kind, {"p": p}, emb, g)
                ok, why = cert.validate()
                if not ok:
                    raise InternalError(
                        f"embedding search returned a bad match: {why}"
                    )
                return cert
    raise InternalError(context)


def certify_from_long_cycle(
    g: Graph,
    spine,
    cycle,
    d: int,
    p: int,
    budget: SearchBudget | None = None,
) -> Certificate:
    """Convert a long induced cycle far from a long induced path into a
    forbidden structure.

    ``spine`` must be an induced path on at least d*p vertices, ``cycle``
    an induced cycle on at least d*(2p+2) vertices avoiding the closed
    neighborhood of the spine, both in the same component.
    """
    budget = ensure_budget(budget)
    if d < 2 or p < 1:
        raise GraphError("need d >= 2 and p >= 1")
    spine = list(spine)
    cycle = list(cycle)
    if not is_induced_path(g, spine):
        raise GraphError("the spine is not an induced path")
    if len(spine) < d * p:
        raise GraphError(f"the spine needs at least {d * p} vertices")
    if not is_induced_cycle(g, cycle):
        raise GraphError("the cycle is not induced")
    ell = len(cycle)
    if ell < d * (2 * p + 2):
        raise GraphError(
            f"the cycle needs at least {d * (2 * p + 2)} vertices"
        )
    sbits = bits_of(spine)
    if bits_of(cycle) & closed_neighborhood_bits(g, sbits):
        raise GraphError("the cycle meets the spine's closed neighborhood")

    connector = shortest_xy_path(g, spine, cycle)
    if connector is None:
        raise GraphError("spine and cycle lie in different components")
    r = len(connector) - 1
    if r < 2:
        raise InternalError("connector jumped the closed-neighborhood gap")
    z1 = connector[1]
    zpre = connector[-2]

    # Third-leg material: a stretch of the spine mostly clear of z1,
    # plus the tail of the connector.
    seg = long_segment(g, spine, z1, p, d)
    if isinstance(seg, Certificate):
        return seg
    qtail = connector[max(1, r - 1 - p): r]
    arm = set(seg[:p]) | set(seg[-p:])

    cyc_nb = [i for i, w in enumerate(cycle) if g.has_edge(zpre, w)]
    if len(cyc_nb) == 1:
        # The connector grazes the cycle at a single vertex: that vertex
        # is the spider center, the cycle supplies two legs, and the
        # connector plus spine supply the third.
        j = cyc_nb[0]
        arc = [cycle[(j + t) % ell] for t in range(-p, p + 1)]
        core = set(arc) | set(qtail) | arm
        full = set(seg) | set(connector[1:]) | set(arc)
        return _spider_search(
            g, p, ("s_p",), (core, full), budget,
            "a one-contact cycle produced no subdivided star",
        )

    # Several contacts: carve the cycle into blocks of 2p+1 vertices
    # separated by single vertices.  A contact in every block yields a
    # star outright; an untouched block sits inside one contact-free
    # stretch of the cycle that carries two legs.
    period = 2 * p + 2
    nb_set = set(cyc_nb)
    leaves = []
    clear_block = None
    for i in range(d):
        block = range(i * period, i * period + 2 * p + 1)
        hits = [t for t in block if t in nb_set]
        if not hits:
            clear_block = block
            break
        leaves.append(cycle[hits[0]])
    if clear_block is None:
        return star_certificate(g, zpre, leaves)

    block_verts = {cycle[t] for t in clear_block}
    stretch = None
    for cand in segments_of_path(g, cycle, zpre, cyclic=True):
        if block_verts <= set(cand):
            stretch = cand
            break
    if stretch is None:
        raise InternalError("an untouched block straddles a contact")
    core = (
        set(stretch[: p + 1])
        | set(stretch[-(p + 1):])
        | set(qtail)
        | arm
    )
    full = set(stretch) | set(connector[1:-1]) | set(seg)
    return _spider_search(
        g, p, ("s_p", "t_p"), (core, full), budget,
        "a multi-contact cycle produced no forbidden spider",
    )


@dataclass
class BackboneStructure:
    """A path decomposition made of closed neighborhoods of windows
    sliding along an induced path, plus the bookkeeping needed to hang
    off-path components onto it."""

    td: TreeDecomposition
    spine: list
    windows: list
    bag_bits: list


def build_backbone(
    g: Graph, spine, h: int, budget: SearchBudget | None = None
):
    """Bags ``N[spine[i:i+h]]`` in spine order, or a long-cycle
    certificate when the sliding windows cannot form a decomposition.

    The two ways validity can fail each hand back an induced cycle on at
    least h+2 vertices: a vertex whose spine neighbors are more than h
    apart, or an edge between two vertices whose neighbor stretches are
    more than h-1 apart.
    """
    budget = ensure_budget(budget)
    spine = list(spine)
    ell = len(spine)
    if h < 2:
        raise GraphError("windows need at least two vertices")
    if ell < h:
        raise GraphError("the spine is shorter than one window")
    if not is_induced_path(g, spine):
        raise GraphError("the spine is not an induced path")

    sbits = bits_of(spine)
    pos_of = {v: i for i, v in enumerate(spine)}
    coverage = closed_neighborhood_bits(g, sbits)

    def cycle_cert(seq):
        if not is_induced_cycle(g, seq):
            raise InternalError("extracted cycle is not induced")
        return cycle_certificate(g, seq)

    intervals = {}
    for u in bit_list(coverage & ~sbits):
        budget.spend()
        posn = sorted(pos_of[w] for w in iter_bits(g.adj_bits(u) & sbits))
        for t1, t2 in zip(posn, posn[1:]):
            if t2 - t1 > h:
                return cycle_cert([u] + spine[t1: t2 + 1])
        intervals[u] = (posn[0], posn[-1])

    off = coverage & ~sbits
    for u in bit_list(off):
        au, bu = intervals[u]
        for w in iter_bits(g.adj_bits(u) & off):
            if w <= u:
                continue
            budget.spend()
            aw, bw = intervals[w]
            if aw - bu - 1 >= h - 1:
                return cycle_cert([u] + spine[bu: aw + 1] + [w])
            if au - bw - 1 >= h - 1:
                return cycle_cert([w] + spine[bw: au + 1] + [u])

    n = ell - h + 1
    windows = [spine[i: i + h] for i in range(n)]
    bag_bits = [closed_neighborhood_bits(g, bits_of(w)) for w in windows]
    td = PathDecomposition(
        g,
        [frozenset(iter_bits(b)) for b in bag_bits],
        vertices=bit_list(coverage),
    )
    return BackboneStructure(td, spine, windows, bag_bits)


def attach_index(
    g: Graph,
    bb: BackboneStructure,
    h_vertices,
    params: ClassParams,
    budget: SearchBudget | None = None,
):
    """Smallest backbone node whose bag swallows the component's whole
    attachment, or a certificate explaining why none can.

    ``h_vertices`` must be an entire component of the graph minus the
    spine's closed neighborhood.
    """
    budget = ensure_budget(budget)
    hb = bits_of(h_vertices)
    if not hb:
        raise GraphError("the component is empty")
    cover = bits_of(bb.td.coverage())
    if hb & cover:
        raise GraphError("the component meets the spine's neighborhood")
    attachers = closed_neighborhood_bits(g, hb) & ~hb
    if attachers & ~cover:
        raise GraphError(
            "vertex set is not a whole component off the spine"
        )
    for i, bag in enumerate(bb.bag_bits):
        budget.spend()
        if attachers & ~bag == 0:
            return i
    if not attachers:
        raise InternalError("an attachment-free component reached attach")
    v = next(iter_bits(attachers))
    got = component_attachment_interval(
        g, bb.spine, bit_list(hb), v, params.q, params.d
    )
    if isinstance(got, Certificate):
        return got
    raise InternalError(
        "every attachment fits inside one window but no bag caught it"
    )


def improve_or_certify(
    g: Graph,
    spine,
    params: ClassParams,
    f_path=None,
    budget: SearchBudget | None = None,
):
    """One step of the spine improvement loop.

    Looks for a long induced path in a component hanging off the spine
    (or takes one supplied as ``f_path``).  Returns a strictly longer
    induced path when the hanging path can be spliced onto a spine end,
    a certificate when it cannot, or None when no component holds a path
    long enough to matter.
    """
    budget = ensure_budget(budget)
    spine = list(spine)
    if not is_induced_path(g, spine):
        raise GraphError("the spine is not an induced path")
    d, p, q, r = params.d, params.p, params.q, params.r
    target = params.branch_path_len
    m = len(spine)
    if m < params.comp_path_len:
        raise GraphError("the spine is too short to anchor improvement")
    cover = closed_neighborhood_bits(g, bits_of(spine))

    if f_path is None:
        for hcomp in component_bits(g, g.full_mask & ~cover):
            f_path = find_induced_path_geq(g, target, within=hcomp,
                                           budget=budget)
            if f_path is not None:
                break
        if f_path is None:
            return None
    else:
        f_path = list(f_path)
        if len(f_path) < target:
            raise GraphError(f"the branch path needs {target} vertices")
        if not is_induced_path(g, f_path):
            raise GraphError("the branch path is not induced")
        if bits_of(f_path) & cover:
            raise GraphError("the branch path touches the spine's"
                             " closed neighborhood")

    connector = shortest_xy_path(g, spine, f_path)
    if connector is None:
        raise GraphError("branch path and spine lie in different"
                         " components")
    ell = len(connector) - 1
    if ell < 2:
        raise InternalError("connector jumped the closed-neighborhood gap")
    w1 = connector[1]
    wpre = connector[-2]

    seg = long_segment(g, f_path, wpre, r + p - 1, d)
    if isinstance(seg, Certificate):
        return seg

    # Rebuild a path of exactly r+p vertices that starts next to the
    # spine (at w1) and otherwise stays clear of it: connector interior
    # first, then into the segment from its connector-facing end.
    interior = connector[1:-1]
    need = (r + p) - len(interior)
    if need <= 0:
        fresh = interior[: r + p]
    else:
        if g.has_edge(wpre, seg[0]):
            oriented = seg
        elif g.has_edge(wpre, seg[-1]):
            oriented = seg[::-1]
        else:
            raise InternalError("segment lost contact with the connector")
        fresh = interior + oriented[:need]
    if len(fresh) != r + p or not is_induced_path(g, fresh):
        raise InternalError("spliced branch path is not induced")
    if bits_of(fresh[1:]) & cover:
        raise InternalError("spliced branch path leans on the spine")

    win = path_interval(g, spine, w1, q, d)
    if isinstance(win, Certificate):
        return win
    a, b = win.lo, win.hi

    if b <= r + p - 1:
        new_spine = fresh[::-1] + spine[b:]
    elif a >= m - r - p:
        new_spine = spine[: a + 1] + fresh
    else:
        # The window sits mid-spine with room on both sides: the spine
        # pieces flanking it plus the fresh path must hold a spider.
        if a < p + 1 or b > m - p - 2:
            raise InternalError(
                "window placement contradicts its own bound"
            )
        left = spine[a - p: a + 1]
        right = spine[b: b + p + 1]
        core = set(left) | set(right) | set(fresh[: p + 1])
        full = set(left) | set(right) | set(fresh)
        return _spider_search(
            g, p, ("s_p", "t_p"), (core, full), budget,
            "a mid-spine attachment produced no forbidden spider",
        )
    if len(new_spine) <= m or not is_induced_path(g, new_spine):
        raise InternalError("spine splice failed to grow an induced path")
    return new_spine


def _decompose_branch(
    cc: Graph, params: ClassParams, budget: SearchBudget
):
    """Decompose one component of the graph left after deleting the
    first spine's closed neighborhood.  All labels are local to cc."""
    d, p = params.d, params.p
    got = starpath.decompose(cc, d, params.comp_path_len, budget)
    if isinstance(got, TreeDecomposition):
        return got
    if got.kind == "star":
        return got
    if got.kind != "path":
        raise InternalError(f"unexpected certificate kind {got.kind!r}")
    spine = list(got.embedding)

    while True:
        budget.spend()
        cover = closed_neighborhood_bits(cc, bits_of(spine))
        hparts = []
        improved = False
        for hbits in component_bits(cc, cc.full_mask & ~cover):
            hh, hold = induced_subgraph(cc, bit_list(hbits))
            sph = starpath.decompose(hh, d, params.branch_path_len, budget)
            if isinstance(sph, TreeDecomposition):
                hparts.append((hbits, _lift_td(sph, hold, cc)))
                continue
            if sph.kind == "star":
                return _lift_cert(sph, hold, cc)
            if sph.kind != "path":
                raise InternalError(
                    f"unexpected certificate kind {sph.kind!r}"
                )
            f_cc = [hold[v] for v in sph.embedding]
            step = improve_or_certify(cc, spine, params, f_path=f_cc,
                                      budget=budget)
            if isinstance(step, Certificate):
                return step
            if step is None:
                raise InternalError("improvement refused a supplied path")
            spine = step
            improved = True
            break
        if improved:
            continue

        bb = build_backbone(cc, spine, params.h, budget=budget)
        if isinstance(bb, Certificate):
            return bb
        cap = (d - 1) * params.h
        for i, bag in enumerate(bb.bag_bits):
            if bag.bit_count() <= cap:
                continue
            wit = oracle.independent_set_of_size(
                cc, cap + 1, within=bag, budget=budget
            )
            if wit is not None:
                return star_from_crowded_neighborhoods(
                    cc, bb.windows[i], wit, d
                )
        td = bb.td
        for hbits, hpart in hparts:
            idx = attach_index(cc, bb, bit_list(hbits), params, budget)
            if isinstance(idx, Certificate):
                return idx
            attachers = closed_neighborhood_bits(cc, hbits) & ~hbits
            td = attach_subtree(
                td, idx, hpart, frozenset(iter_bits(attachers))
            )
        return td


def _decompose_connected(
    cg: Graph, params: ClassParams, budget: SearchBudget
):
    """Decompose one connected graph.  All labels are local to cg."""
    d, p = params.d, params.p
    got = starpath.decompose(cg, d, params.spine_len, budget)
    if isinstance(got, TreeDecomposition):
        return got
    if got.kind == "star":
        return got
    if got.kind != "path":
        raise InternalError(f"unexpected certificate kind {got.kind!r}")
    p0 = list(got.embedding)

    x0 = closed_neighborhood_bits(cg, bits_of(p0))
    wit = oracle.independent_set_of_size(
        cg, (d - 1) * len(p0) + 1, within=x0, budget=budget
    )
    if wit is not None:
        return star_from_crowded_neighborhoods(cg, p0, wit, d)

    parts = []
    for cbits in component_bits(cg, cg.full_mask & ~x0):
        cc, cold = induced_subgraph(cg, bit_list(cbits))
        got = _decompose_branch(cc, params, budget)
        if isinstance(got, Certificate):
            cert = _lift_cert(got, cold, cg)
            if cert.kind == "cycle":
                return certify_from_long_cycle(
                    cg, p0, list(cert.embedding), d, p, budget
                )
            return cert
        parts.append(_lift_td(got, cold, cg))
    return merge_at_hub(
        cg, parts, frozenset(iter_bits(x0)), add_hub_to_parts=True
    )


def decompose(
    g: Graph, d: int, p: int, budget: SearchBudget | None = None
):
    """Tree decomposition with bag independence at most
    ``alpha_bound(d, p)``, or a star / spider / spider-line-graph
    certificate showing the graph is outside the class."""
    budget = ensure_budget(budget)
    params = ClassParams(d, p)
    if g.n == 0:
        return TreeDecomposition(g, [frozenset()], [])

    if d == 2:
        # Excluding the two-leaf star leaves disjoint cliques; the
        # generic peel with path length 3 already handles those, and its
        # three-vertex path certificate is the star we want.
        got = starpath.decompose(g, 2, 3, budget)
        if isinstance(got, Certificate) and got.kind == "path":
            first, mid, last = got.embedding
            return star_certificate(g, mid, [first, last])
        return got

    parts = []
    for comp in component_bits(g):
        cg, old = induced_subgraph(g, bit_list(comp))
        got = _decompose_connected(cg, params, budget)
        if isinstance(got, Certificate):
            return _lift_cert(got, old, g)
        parts.append(_lift_td(got, old, g))
    if len(parts) == 1:
        return parts[0]
    return merge_at_hub(g, parts, frozenset())


def _combine_peel_certificate(
    g: Graph, inner: Certificate, old, s_emb, t_emb, p: int, k: int
) -> Certificate:
    """Lift a certificate found after peeling one spider of each kind.

    Copies found in the remaining graph avoid the peeled copies' closed
    neighborhoods, so gluing the peeled copy in front yields one more
    pairwise non-adjacent copy.
    """
    if inner.kind == "star":
        return _lift_cert(inner, old, g)
    if inner.kind in ("s_p", "k_s_p"):
        base, kind = s_emb, "s"
    elif inner.kind in ("t_p", "k_t_p"):
        base, kind = t_emb, "t"
    else:
        raise InternalError(
            f"unexpected certificate kind {inner.kind!r} after peeling"
        )
    if base is None:
        raise InternalError(
            "a copy count grew in a subgraph of a copy-free graph"
        )
    inner_k = inner.params.get("k", 1)
    emb = list(base) + [old[v] for v in inner.embedding]
    cert = Certificate(
        f"k_{kind}_p", {"k": inner_k + 1, "p": p}, emb, g
    )
    ok, why = cert.validate()
    if not ok:
        raise InternalError(f"peeled copies were not independent: {why}")
    return cert


def decompose_k(
    g: Graph, d: int, p: int, k: int,
    budget: SearchBudget | None = None,
):
    """Decompose graphs that exclude the star plus k disjoint spiders
    and k disjoint spider line graphs; bags stay within
    ``alpha_bound_k(d, p, k)``.

    Peels the closed neighborhood of one spider of each kind, recurses
    with k-1, and adds the peeled set to every bag.
    """
    if k < 1:
        raise GraphError("need at least one forbidden copy")
    budget = ensure_budget(budget)
    if k == 1:
        return decompose(g, d, p, budget)
    ClassParams(d, p)

    s_emb = find_induced_embedding(
        pattern_graph("s_p", {"p": p}), g, budget=budget
    )
    t_emb = find_induced_embedding(
        pattern_graph("t_p", {"p": p}), g, budget=budget
    )
    peel = 0
    core = []
    if s_emb is not None:
        peel |= closed_neighborhood_bits(g, bits_of(s_emb))
        core.extend(s_emb)
    if t_emb is not None:
        peel |= closed_neighborhood_bits(g, bits_of(t_emb))
        core.extend(t_emb)
    if core:
        cap = 6 * (d - 1) * (p + 1)
        wit = oracle.independent_set_of_size(
            g, cap + 1, within=peel, budget=budget
        )
        if wit is not None:
            return star_from_crowded_neighborhoods(g, core, wit, d)

    sub, old = induced_subgraph(g, bit_list(g.full_mask & ~peel))
    inner = decompose_k(sub, d, p, k - 1, budget)
    if isinstance(inner, Certificate):
        return _combine_peel_certificate(g, inner, old, s_emb, t_emb, p, k)
    td = _lift_td(inner, old, g)
    if peel:
        td = add_to_all_bags(td, bit_list(peel))
    return td
