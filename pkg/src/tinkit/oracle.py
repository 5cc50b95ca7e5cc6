"""Exact oracles for small graphs.

All of these are exponential searches meant for desk-scale inputs and for
grounding tests; they are exact or they raise, never approximate.  The
independence number uses branch and bound with a greedy clique-cover
bound.  The tree-independence number and treewidth share one kernel that
enumerates elimination orderings depth-first over shared prefixes: the
cliques created by eliminating a vertex are the bags of the chordal
completion the ordering generates, minimizing the worst bag over all
orderings is exact for both measures, and a prefix is abandoned as soon
as its running cost reaches the best complete ordering found.
"""

from __future__ import annotations

from fractions import Fraction

from .budget import SearchBudget, ensure_budget
from .errors import GraphError
from .graph import Graph, bit_list, bits_of, complement, iter_bits

TIN_MAX_N = 11
MWIS_MAX_N = 26


def _clique_cover_bound(adj, cand: int) -> int:
    """Greedy clique partition of cand; its size bounds the independence
    number from above."""
    cliques: list[int] = []
    for v in iter_bits(cand):
        placed = False
        for i, cm in enumerate(cliques):
            if cm & ~adj[v] == 0:
                cliques[i] = cm | 1 << v
                placed = True
                break
        if not placed:
            cliques.append(1 << v)
    return len(cliques)


def _mis_search(
    adj,
    cand: int,
    budget: SearchBudget,
    target: int | None = None,
) -> tuple[int, int]:
    """Maximum independent subset of the candidate bitset.

    Returns (size, bitset).  With ``target`` set, stops as soon as an
    independent set of at least that size is found.
    """
    best_size = -1
    best_bits = 0

    def rec(c: int, size: int, bits: int) -> bool:
        nonlocal best_size, best_bits
        budget.spend()
        if size > best_size:
            best_size, best_bits = size, bits
            if target is not None and best_size >= target:
                return True
        if not c:
            return False
        if size + _clique_cover_bound(adj, c) <= best_size:
            return False
        pick = -1
        pick_deg = -1
        for v in iter_bits(c):
            d = (adj[v] & c).bit_count()
            if d > pick_deg:
                pick, pick_deg = v, d
        vb = 1 << pick
        if rec(c & ~adj[pick] & ~vb, size + 1, bits | vb):
            return True
        return rec(c & ~vb, size, bits)

    rec(cand, 0, 0)
    return best_size, best_bits


def _restrict(g: Graph, within) -> int:
    """Vertex restriction as a bitset; accepts None, a mask, or vertices."""
    if within is None:
        return g.full_mask
    if isinstance(within, int):
        return within
    return bits_of(within)


def alpha_exact(
    g: Graph, within=None, budget: SearchBudget | None = None
) -> int:
    """Independence number of g, or of the induced subgraph on ``within``."""
    budget = ensure_budget(budget)
    size, _ = _mis_search(g._adj, _restrict(g, within), budget)
    return size


def max_independent_set(
    g: Graph, within=None, budget: SearchBudget | None = None
) -> set[int]:
    budget = ensure_budget(budget)
    _, bits = _mis_search(g._adj, _restrict(g, within), budget)
    return set(iter_bits(bits))


def independent_set_of_size(
    g: Graph, k: int, within=None, budget: SearchBudget | None = None
) -> set[int] | None:
    """Some independent set of size k, or None; stops at the first hit."""
    if k <= 0:
        return set()
    budget = ensure_budget(budget)
    size, bits = _mis_search(g._adj, _restrict(g, within), budget, target=k)
    if size >= k:
        out = bit_list(bits)[:k]
        return set(out)
    return None


def enumerate_independent_sets(g: Graph, within):
    """All independent subsets of ``within`` as bitsets, in lexicographic
    order of their sorted vertex tuples (the empty set first)."""
    verts = sorted(set(within)) if not isinstance(within, int) else bit_list(within)
    adj = g._adj

    def gen(bits: int, start: int):
        yield bits
        for idx in range(start, len(verts)):
            v = verts[idx]
            if adj[v] & bits:
                continue
            yield from gen(bits | 1 << v, idx + 1)

    yield from gen(0, 0)


# ---------------------------------------------------------------------------
# elimination ordering kernel


def _elimination_search(g: Graph, clique_cost, stop_at: int, budget):
    """Minimize, over elimination orderings, the worst clique cost.

    clique_cost maps the bitset {v} | (current fill neighbors of v) to an
    int.  Orderings are explored depth-first over shared prefixes, trying
    the cheapest elimination first, pruning a prefix once its running
    maximum cannot beat the best ordering seen, and stopping outright
    when the best hits stop_at.
    """
    n = g.n
    best_cost = None
    best_order: tuple[int, ...] = ()

    def rec(remaining: int, adj, running: int, prefix: list[int]) -> bool:
        nonlocal best_cost, best_order
        budget.spend()
        if remaining == 0:
            best_cost = running
            best_order = tuple(prefix)
            return best_cost <= stop_at
        scored = []
        for v in iter_bits(remaining):
            k = (adj[v] & remaining) | 1 << v
            scored.append((clique_cost(k), v))
        scored.sort()
        for cost, v in scored:
            new_running = cost if cost > running else running
            if best_cost is not None and new_running >= best_cost:
                break
            rem2 = remaining & ~(1 << v)
            nbrs = adj[v] & rem2
            adj2 = adj[:]
            for u in iter_bits(nbrs):
                adj2[u] = adj[u] | (nbrs & ~(1 << u))
            prefix.append(v)
            done = rec(rem2, adj2, new_running, prefix)
            prefix.pop()
            if done:
                return True
        return False

    rec(g.full_mask, list(g._adj), 0, [])
    return best_cost, best_order


def tin_exact(
    g: Graph,
    budget: SearchBudget | None = None,
    max_n: int = TIN_MAX_N,
    with_ordering: bool = False,
):
    """Tree-independence number by exhausting elimination orderings.

    The bags of any tree decomposition can be completed into a chordal
    supergraph whose maximal cliques refine them, every chordal supergraph
    arises from the fill-in of some ordering, and subsets of a clique
    never increase the independence number, so the minimum over orderings
    of the worst eliminated clique's independence number is exact.
    """
    if g.n > max_n:
        raise GraphError(
            f"tin_exact enumerates orderings and refuses n={g.n} > {max_n}"
        )
    budget = ensure_budget(budget)
    if g.n == 0:
        return (0, ()) if with_ordering else 0
    if g.edge_count == 0:
        order = tuple(range(g.n))
        return (1, order) if with_ordering else 1
    alpha_memo: dict[int, int] = {}
    adj = g._adj

    def cost(k: int) -> int:
        got = alpha_memo.get(k)
        if got is None:
            got, _ = _mis_search(adj, k, budget)
            alpha_memo[k] = got
        return got

    value, order = _elimination_search(g, cost, 1, budget)
    return (value, order) if with_ordering else value


def tw_exact(
    g: Graph,
    budget: SearchBudget | None = None,
    max_n: int = TIN_MAX_N,
    with_ordering: bool = False,
):
    """Treewidth by the same ordering enumeration with clique size costs."""
    if g.n > max_n:
        raise GraphError(
            f"tw_exact enumerates orderings and refuses n={g.n} > {max_n}"
        )
    budget = ensure_budget(budget)
    if g.n == 0:
        return (-1, ()) if with_ordering else -1
    if g.edge_count == 0:
        order = tuple(range(g.n))
        return (0, order) if with_ordering else 0
    omega, _ = _mis_search(complement(g)._adj, g.full_mask, budget)
    value, order = _elimination_search(
        g, lambda k: k.bit_count() - 1, max(omega - 1, 1), budget
    )
    return (value, order) if with_ordering else value


# ---------------------------------------------------------------------------
# balanced induced bicliques


def _find_biclique(g: Graph, k: int, budget) -> tuple[set, set] | None:
    """Some induced complete bipartite pair of independent k-sets."""
    adj = g._adj
    n = g.n

    def extend(chosen: list[int], common: int, banned: int, start: int):
        budget.spend()
        if len(chosen) == k:
            above = ~((1 << (chosen[0] + 1)) - 1)
            size, bits = _mis_search(adj, common & above, budget, target=k)
            if size >= k:
                return set(chosen), set(bit_list(bits)[:k])
            return None
        if common.bit_count() < k:
            return None
        for v in range(start, n):
            vb = 1 << v
            if banned & vb:
                continue
            got = extend(
                chosen + [v],
                common & adj[v] if chosen else adj[v],
                banned | adj[v] | vb,
                v + 1,
            )
            if got:
                return got
        return None

    return extend([], g.full_mask, 0, 0)


def ibn_exact(
    g: Graph, budget: SearchBudget | None = None, with_witness: bool = False
):
    """Largest k with a balanced induced complete bipartite subgraph.

    An induced biclique on k plus k vertices contains one on k-1 plus k-1,
    so k is searched upward and the first miss is final.  Zero when the
    graph has no edge.
    """
    budget = ensure_budget(budget)
    if g.edge_count == 0:
        return (0, None) if with_witness else 0
    upper = alpha_exact(g, budget=budget)
    best = 0
    witness = None
    for k in range(1, upper + 1):
        got = _find_biclique(g, k, budget)
        if got is None:
            break
        best = k
        witness = got
    return (best, witness) if with_witness else best


# ---------------------------------------------------------------------------
# maximum weight independent set, by direct branch and bound


def mwis_exact(
    g: Graph,
    weights,
    budget: SearchBudget | None = None,
    max_n: int = MWIS_MAX_N,
) -> tuple[Fraction, set[int]]:
    """Maximum weight independent set with exact rational arithmetic.

    Weights may be any rationals; vertices with nonpositive weight never
    improve the total, so the search skips them and the empty set is
    always a candidate.
    """
    if g.n > max_n:
        raise GraphError(
            f"mwis_exact is exponential and refuses n={g.n} > {max_n}"
        )
    if len(weights) != g.n:
        raise GraphError(
            f"expected {g.n} weights, got {len(weights)}"
        )
    budget = ensure_budget(budget)
    w = [Fraction(x) for x in weights]
    adj = g._adj
    cand0 = bits_of(v for v in range(g.n) if w[v] > 0)
    best_weight = Fraction(0)
    best_bits = 0

    def rec(cand: int, cur: Fraction, bits: int) -> None:
        nonlocal best_weight, best_bits
        budget.spend()
        if cur > best_weight:
            best_weight, best_bits = cur, bits
        if not cand:
            return
        total = cur
        for v in iter_bits(cand):
            total += w[v]
        if total <= best_weight:
            return
        pick = -1
        pick_deg = -1
        for v in iter_bits(cand):
            d = (adj[v] & cand).bit_count()
            if d > pick_deg:
                pick, pick_deg = v, d
        vb = 1 << pick
        rec(cand & ~adj[pick] & ~vb, cur + w[pick], bits | vb)
        rec(cand & ~vb, cur, bits)

    rec(cand0, Fraction(0), 0)
    return best_weight, set(iter_bits(best_bits))
