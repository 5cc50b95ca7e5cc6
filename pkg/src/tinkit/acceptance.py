"""Self-contained verification suite for the package's headline guarantees.

Nine numbered checks, each independent of the others except that check 9
re-examines certificates collected while checks 3 and 4 ran.  Every check
recomputes what it claims from scratch, through the public API, and reports
a single pass/fail outcome with a human-readable detail string.

The suite is deterministic for a fixed seed.  ``full=True`` enables the
slow optional instances (they can add several minutes).
"""

import time
import random
from fractions import Fraction
from itertools import combinations

from . import oracle
from . import starpath
from . import backbone
from . import cograph
from . import mwis
from .graph import (
    Graph,
    make_graph,
    empty_graph,
    complete_graph,
    complete_bipartite,
    path_graph,
    cycle_graph,
    line_graph,
    disjoint_union,
    induced_subgraph,
    gen_Gn,
    verify_induced_minor_model,
)
from .tdecomp import TreeDecomposition, validate, width, independence_number
from .patterns import (
    Certificate,
    pattern_graph,
    find_induced_embedding,
    find_induced_star,
    find_induced_path_geq,
)
from .lift import line_decomposition, heuristic_td, gn_host_decomposition, gn_biclique_minor_model

DEFAULT_SEED = 20260822


def _line(g):
    lg, _ = line_graph(g)
    return lg

# Sample sizes for the randomized checks.
C3_IN_CLASS = 500
C3_OUT_CLASS = 100
C5_COUNT = 200
C6_RANDOM = 1000
C6_SCALE_N = 10_000
C6_SCALE_SECONDS = 5.0
C8_COUNT = 200

ATLAS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


class CriterionResult:
    __slots__ = ("ident", "name", "passed", "detail", "seconds")

    def __init__(self, ident, name, passed, detail, seconds):
        self.ident = ident
        self.name = name
        self.passed = passed
        self.detail = detail
        self.seconds = seconds

    def line(self):
        word = "PASS" if self.passed else "FAIL"
        return "criterion %d (%s): %s [%.1fs] %s" % (
            self.ident, self.name, word, self.seconds, self.detail)


# ---------------------------------------------------------------------------
# random instance generators (seeded, used by checks 3, 5, 8)

def random_graph(rng, n, p):
    edges = [e for e in combinations(range(n), 2) if rng.random() < p]
    return make_graph(n, edges)


def random_clique_union(rng, n):
    """Disjoint cliques: no induced three-leaf star and no induced long path."""
    edges = []
    start = 0
    while start < n:
        size = rng.randint(1, min(5, n - start))
        edges.extend(combinations(range(start, start + size), 2))
        start += size
    return make_graph(n, edges)


def clique_chain(rng, n):
    """Two or three cliques in a row, consecutive ones sharing one vertex.

    The shared vertex sees only two cliques, so no center has three pairwise
    nonadjacent neighbors, and with at most three blocks the longest induced
    path has four vertices.
    """
    if n < 3:
        return complete_graph(n)
    k = 3 if (n >= 5 and rng.random() < 0.6) else 2
    if n - 2 < k - 1:
        k = 2
    pts = sorted(rng.sample(range(1, n - 1), k - 1))
    bounds = [0] + pts + [n - 1]
    edges = set()
    for i in range(len(bounds) - 1):
        lo, hi = bounds[i], bounds[i + 1]
        for u, v in combinations(range(lo, hi + 1), 2):
            edges.add((u, v))
    return make_graph(n, sorted(edges))


def _caterpillar(spine_len, leg_positions):
    edges = [(i, i + 1) for i in range(spine_len - 1)]
    nxt = spine_len
    for pos in leg_positions:
        edges.append((pos, nxt))
        nxt += 1
    return make_graph(nxt, edges)


def _random_degree_two(rng, n):
    """Disjoint union of paths and cycles on about n vertices."""
    pieces = []
    left = n
    while left > 0:
        size = rng.randint(1, min(12, left))
        if size >= 4 and rng.random() < 0.4:
            pieces.append(cycle_graph(size))
        else:
            pieces.append(path_graph(size))
        left -= size
    g = pieces[0]
    for piece in pieces[1:]:
        g = disjoint_union(g, piece)
    return g


# ---------------------------------------------------------------------------

class AcceptanceSuite:
    """Runs the numbered checks and collects results.

    Certificates produced while running checks 3 and 4 are kept (with the
    graph they talk about) so check 9 can re-validate them independently.
    """

    def __init__(self, seed=DEFAULT_SEED, full=False, report_timing=True):
        self.seed = seed
        self.full = full
        self.report_timing = report_timing
        self.collected_certs = []
        self._atlas = None
        self._ran = set()

    # -- shared infrastructure

    def _catalog(self):
        """All graphs on at most 7 vertices, grouped by vertex count.

        Built from networkx's atlas and converted to package graphs; the
        per-order counts are asserted against the known values and the
        small orders are cross-checked for duplicates with canonical_form.
        """
        if self._atlas is not None:
            return self._atlas
        import networkx as nx
        from .graph import canonical_form
        by_n = {k: [] for k in range(8)}
        for ng in nx.graph_atlas_g():
            n = ng.number_of_nodes()
            if n > 7:
                continue
            nodes = sorted(ng.nodes())
            idx = {u: i for i, u in enumerate(nodes)}
            g = make_graph(n, [(idx[a], idx[b]) for a, b in ng.edges()])
            by_n[n].append(g)
        for n, want in ATLAS_COUNTS.items():
            have = len(by_n[n])
            if have != want:
                raise RuntimeError(
                    "catalog has %d graphs on %d vertices, expected %d" % (have, n, want))
        for n in range(1, 7):
            forms = {canonical_form(g) for g in by_n[n]}
            if len(forms) != len(by_n[n]):
                raise RuntimeError("catalog has isomorphic duplicates on %d vertices" % n)
        self._atlas = by_n
        return by_n

    def run(self, only=None):
        methods = [
            (1, "named-family exact values", self.check_named_families),
            (2, "gadget witness certification chain", self.check_gadget_chain),
            (3, "star-path decomposer on random graphs", self.check_starpath_random),
            (4, "backbone decomposer on curated suite", self.check_backbone_suite),
            (5, "line-graph lifts of heuristic decompositions", self.check_line_lifts),
            (6, "cograph solver exactness and scaling", self.check_cograph),
            (7, "small-graph catalog bounds and monotonicity", self.check_catalog),
            (8, "weighted independent set over decompositions", self.check_mwis),
            (9, "certificate re-validation", self.check_certificates),
        ]
        results = []
        for ident, name, fn in methods:
            if only is not None and ident not in only:
                continue
            t0 = time.monotonic()
            try:
                passed, detail = fn()
            except Exception as exc:  # a crash is a failure, not an excuse
                passed, detail = False, "raised %r" % (exc,)
            seconds = time.monotonic() - t0
            self._ran.add(ident)
            results.append(CriterionResult(ident, name, passed, detail, seconds))
        return results

    # -- check 1

    def check_named_families(self):
        cases = []
        for n in (1, 2, 3):
            cases.append(("biclique-%d" % n, complete_bipartite(n, n), n))
        for m in (2, 3):
            cases.append(("line-of-biclique-%d" % m, _line(complete_bipartite(m, m)), m))
        for n in (3, 4):
            cases.append(("line-of-complete-%d" % n, _line(complete_graph(n)), n // 2))
        if self.full:
            cases.append(("line-of-complete-5", _line(complete_graph(5)), 2))
        bad = []
        for name, g, want in cases:
            got = oracle.tin_exact(g)
            if got != want:
                bad.append("%s: got %d, wanted %d" % (name, got, want))
        if bad:
            return False, "; ".join(bad)
        return True, "%d families matched exactly" % len(cases)

    # -- check 2

    def check_gadget_chain(self):
        wit = gen_Gn(3)
        g3 = wit.graph
        tw = oracle.tw_exact(g3)
        if tw != 2:
            return False, "treewidth of the order-3 gadget came out %d, wanted 2" % tw
        host = gn_host_decomposition(wit)
        lg, edge_list, lifted = line_decomposition(g3, host)
        ok, why = validate(lg, lifted)
        if not ok:
            return False, "lifted decomposition invalid: %s" % why
        a = independence_number(lg, lifted)
        if a > 3:
            return False, "lifted decomposition has bag independence %d > 3" % a
        lg2, _, model = gn_biclique_minor_model(wit)
        if lg2.n != lg.n or lg2._adj != lg._adj:
            return False, "line graph mismatch between the two constructions"
        ok, why = verify_induced_minor_model(lg2, model.pattern, model.branch_sets)
        if not ok:
            return False, "biclique minor model failed verification: %s" % why
        lower = oracle.tin_exact(complete_bipartite(3, 3))
        if lower != 3:
            return False, "biclique reference value came out %d, wanted 3" % lower
        # upper bound 3 from the lifted decomposition, lower bound 3 from the
        # verified induced-minor model plus the reference value, so exactly 3
        return True, ("treewidth 2 host, lifted independence %d, minor model verified, "
                      "value pinned to 3" % a)

    # -- check 3

    def _starpath_in_sample(self, rng):
        for _ in range(60):
            n = rng.randint(1, 20)
            kind = rng.randrange(3)
            if kind == 0:
                g = random_clique_union(rng, n)
            elif kind == 1:
                g = clique_chain(rng, n)
            else:
                half = max(1, n // 2)
                g = disjoint_union(random_clique_union(rng, half), clique_chain(rng, max(1, n - half)))
            if find_induced_star(g, 3) is None and find_induced_path_geq(g, 5) is None:
                return g
        raise RuntimeError("could not draw an in-class sample")

    def check_starpath_random(self):
        rng = random.Random(self.seed ^ 0x5A3)
        errors = []
        for i in range(C3_IN_CLASS):
            g = self._starpath_in_sample(rng)
            res = starpath.decompose(g, 3, 5)
            if isinstance(res, Certificate):
                errors.append("sample %d: certificate on an in-class graph (%s)" % (i, res.kind))
                break
            ok, why = validate(g, res)
            if not ok:
                errors.append("sample %d: invalid decomposition: %s" % (i, why))
                break
            a = independence_number(g, res)
            if a > 6:
                errors.append("sample %d: bag independence %d > 6" % (i, a))
                break
        certs = 0
        attempts = 0
        while certs < C3_OUT_CLASS and attempts < 6000 and not errors:
            attempts += 1
            n = rng.randint(8, 20)
            g = random_graph(rng, n, 0.10 + 0.15 * rng.random())
            res = starpath.decompose(g, 3, 5)
            if not isinstance(res, Certificate):
                continue
            ok, why = res.validate()
            if not ok:
                errors.append("returned certificate does not validate: %s" % why)
                break
            has_star = find_induced_star(g, 3) is not None
            has_path = find_induced_path_geq(g, 5) is not None
            if not (has_star or has_path):
                errors.append("certificate produced for a graph with neither obstruction")
                break
            self.collected_certs.append((g, res))
            certs += 1
        if not errors and certs < C3_OUT_CLASS:
            errors.append("only %d certificate cases found in %d attempts" % (certs, attempts))
        if errors:
            return False, errors[0]
        return True, ("%d in-class graphs decomposed within bound 6, "
                      "%d obstruction certificates re-validated" % (C3_IN_CLASS, certs))

    # -- check 4

    def _backbone_in_class(self, d, p, rng):
        gs = []
        for k in (1, 2, 5, 12, 27, 40):
            gs.append(path_graph(k))
        for k in (4, 9, 24, 40):
            gs.append(cycle_graph(k))
        gs.append(disjoint_union(path_graph(7), cycle_graph(9)))
        gs.append(disjoint_union(cycle_graph(5), disjoint_union(path_graph(11), cycle_graph(6))))
        gs.append(_line(path_graph(13)))
        gs.append(_line(cycle_graph(17)))
        for _ in range(3):
            gs.append(_random_degree_two(rng, rng.randint(6, 40)))
        if p >= 2:
            for m in (3, 5, 8):
                gs.append(complete_graph(m))
            gs.append(_line(_caterpillar(10, [1, 3, 5, 7])))
            gs.append(_line(_caterpillar(14, list(range(1, 13)))))
            gs.append(disjoint_union(complete_graph(4), _line(_caterpillar(8, [2, 5]))))
        star = pattern_graph("star", {"leaves": d})
        sp = pattern_graph("s_p", {"p": p})
        tp = pattern_graph("t_p", {"p": p})
        for g in gs:
            if find_induced_embedding(star, g) is not None:
                raise RuntimeError("curated graph contains the forbidden star")
            if find_induced_embedding(sp, g) is not None:
                raise RuntimeError("curated graph contains the forbidden spider")
            if find_induced_embedding(tp, g) is not None:
                raise RuntimeError("curated graph contains the forbidden spider line graph")
        return gs

    def check_backbone_suite(self):
        rng = random.Random(self.seed ^ 0xB4C)
        star_m = {(3, 1): 9, (3, 2): 12, (4, 1): 10, (4, 2): 26}
        total = 0
        cert_count = 0
        for d in (3, 4):
            for p in (1, 2):
                params = backbone.ClassParams(d, p)
                advertised = 20 * (d - 1) ** 4 * (p + 1)
                if params.bound != advertised:
                    return False, "internal bound %d disagrees with advertised %d" % (
                        params.bound, advertised)
                for g in self._backbone_in_class(d, p, rng):
                    res = backbone.decompose(g, d, p)
                    if isinstance(res, Certificate):
                        return False, "(d=%d,p=%d): certificate on an in-class graph" % (d, p)
                    ok, why = validate(g, res)
                    if not ok:
                        return False, "(d=%d,p=%d): invalid decomposition: %s" % (d, p, why)
                    a = independence_number(g, res)
                    if a > advertised:
                        return False, "(d=%d,p=%d): bag independence %d > %d" % (
                            d, p, a, advertised)
                    total += 1
                # a big enough star always draws a certificate
                g = complete_bipartite(1, star_m[(d, p)])
                res = backbone.decompose(g, d, p)
                if not isinstance(res, Certificate):
                    return False, "(d=%d,p=%d): crowded star produced no certificate" % (d, p)
                ok, why = res.validate()
                if not ok:
                    return False, "(d=%d,p=%d): star certificate invalid: %s" % (d, p, why)
                self.collected_certs.append((g, res))
                cert_count += 1
                if d == 3:
                    found = 0
                    for _ in range(120):
                        n = rng.randint(12, 22)
                        h = random_graph(rng, n, 0.45 + 0.2 * rng.random())
                        res = backbone.decompose(h, d, p)
                        if isinstance(res, Certificate):
                            ok, why = res.validate()
                            if not ok:
                                return False, "(d=%d,p=%d): random certificate invalid: %s" % (
                                    d, p, why)
                            self.collected_certs.append((h, res))
                            found += 1
                            cert_count += 1
                            if found >= 5:
                                break
        return True, ("%d in-class graphs within the advertised bounds, "
                      "%d out-of-class certificates re-validated" % (total, cert_count))

    # -- check 5

    def check_line_lifts(self):
        rng = random.Random(self.seed ^ 0x11F7)
        for i in range(C5_COUNT):
            g = empty_graph(0)
            while g.edge_count == 0:
                n = rng.randint(2, 12)
                g = random_graph(rng, n, 0.1 + 0.8 * rng.random())
            td = heuristic_td(g)
            w = width(td)
            lg, edge_list, lifted = line_decomposition(g, td)
            ok, why = validate(lg, lifted)
            if not ok:
                return False, "sample %d: invalid lifted decomposition: %s" % (i, why)
            a = independence_number(lg, lifted)
            if a > w + 1:
                return False, "sample %d: lifted independence %d > width+1 = %d" % (i, a, w + 1)
        wit = gen_Gn(3)
        host = gn_host_decomposition(wit)
        lg, _, lifted = line_decomposition(wit.graph, host)
        a = independence_number(lg, lifted)
        if a != width(host) + 1:
            return False, "gadget equality case came out %d, wanted %d" % (a, width(host) + 1)
        return True, ("%d random hosts stayed within width+1, "
                      "gadget attains equality at %d" % (C5_COUNT, a))

    # -- check 6

    def check_cograph(self):
        by_n = self._catalog()
        exhaustive = 0
        for n in range(1, 7):
            for g in by_n[n]:
                if cograph.find_p4(g) is not None:
                    continue
                want = oracle.tin_exact(g)
                got = cograph.tin_cograph(g)
                if got != want:
                    return False, "exhaustive: solver said %s, oracle says %d" % (got, want)
                td = cograph.decompose_cograph(g)
                if isinstance(td, Certificate):
                    return False, "exhaustive: decomposer certified a cograph"
                a = independence_number(g, td)
                if a != want:
                    return False, "exhaustive: decomposition achieves %d, value is %d" % (a, want)
                exhaustive += 1
        rng = random.Random(self.seed ^ 0xC06)
        for i in range(C6_RANDOM):
            n = rng.randint(2, 8)
            g = cograph.random_cograph(n, rng)
            want = oracle.tin_exact(g)
            got = cograph.tin_cograph(g)
            if got != want:
                return False, "random %d: solver said %s, oracle says %d" % (i, got, want)
            td = cograph.decompose_cograph(g)
            a = independence_number(g, td)
            if a != want:
                return False, "random %d: decomposition achieves %d, value is %d" % (i, a, want)
        big = cograph.random_cograph(C6_SCALE_N, random.Random(self.seed ^ 0xB16))
        t0 = time.monotonic()
        val = cograph.tin_cograph(big)
        elapsed = time.monotonic() - t0
        if elapsed > C6_SCALE_SECONDS:
            return False, "solver took %.2fs on %d vertices (limit %.1fs)" % (
                elapsed, C6_SCALE_N, C6_SCALE_SECONDS)
        timing = " in %.2fs" % elapsed if self.report_timing else " within the time limit"
        return True, ("%d exhaustive + %d random instances exact, "
                      "%d-vertex instance solved (value %d)%s" % (
                          exhaustive, C6_RANDOM, C6_SCALE_N, val, timing))

    # -- check 7

    def check_catalog(self):
        by_n = self._catalog()
        checked = 0
        deletions = 0
        for n in range(1, 8):
            for g in by_n[n]:
                tin = oracle.tin_exact(g)
                alpha = oracle.alpha_exact(g)
                tw = oracle.tw_exact(g)
                ibn = oracle.ibn_exact(g)
                lo = max(ibn, 1)
                hi = min(alpha, tw + 1)
                if not (lo <= tin <= hi):
                    return False, "order %d: %d <= %d <= %d fails" % (n, lo, tin, hi)
                checked += 1
                if n >= 2:
                    for v in range(n):
                        sub, _ = induced_subgraph(
                            g, [u for u in range(n) if u != v])
                        if oracle.tin_exact(sub) > tin:
                            return False, ("order %d: deleting a vertex raised the "
                                           "value above %d" % (n, tin))
                        deletions += 1
        return True, "%d graphs sandwiched, %d deletions monotone" % (checked, deletions)

    # -- check 8

    def check_mwis(self):
        rng = random.Random(self.seed ^ 0x315)
        strategies = {}
        for i in range(C8_COUNT):
            n = rng.randint(1, 15)
            g = random_graph(rng, n, 0.15 + 0.7 * rng.random())
            weights = [Fraction(rng.randint(0, 30), rng.randint(1, 7)) for _ in range(n)]
            inst = mwis.WeightedInstance(g, weights)
            exact_w, exact_set = oracle.mwis_exact(g, weights)

            def check_one(label, got_w, got_set):
                if got_w != exact_w:
                    return "sample %d (%s): weight %s, exact %s" % (i, label, got_w, exact_w)
                for u, v in combinations(sorted(got_set), 2):
                    if g.has_edge(u, v):
                        return "sample %d (%s): returned set not independent" % (i, label)
                if sum((weights[u] for u in got_set), Fraction(0)) != got_w:
                    return "sample %d (%s): set weight disagrees" % (i, label)
                return None

            td = heuristic_td(g)
            w1, s1 = mwis.solve(inst, td)
            err = check_one("heuristic", w1, s1)
            if err:
                return False, err
            strategies["heuristic"] = strategies.get("heuristic", 0) + 1

            hint = None
            if i % 3 == 1:
                hint = ("star-path", 3, 5)
            elif i % 3 == 2:
                hint = ("backbone", 3, 1)
            w2, s2, info = mwis.solve_auto(inst, class_hint=hint)
            err = check_one(info["strategy"], w2, s2)
            if err:
                return False, err
            strategies[info["strategy"]] = strategies.get(info["strategy"], 0) + 1
        mix = ", ".join("%s:%d" % kv for kv in sorted(strategies.items()))
        return True, "%d instances, every route exact (%s)" % (C8_COUNT, mix)

    # -- check 9

    def check_certificates(self):
        if 3 not in self._ran:
            self.check_starpath_random()
        if 4 not in self._ran:
            self.check_backbone_suite()
        if not self.collected_certs:
            return False, "no certificates were collected"
        for idx, (g, cert) in enumerate(self.collected_certs):
            ok, why = cert.validate()
            if not ok:
                return False, "certificate %d failed re-validation: %s" % (idx, why)
            pat = pattern_graph(cert.kind, cert.params)
            emb = find_induced_embedding(pat, g, within=set(cert.embedding))
            if emb is None:
                return False, ("certificate %d: no embedding found inside its "
                               "own vertex set" % idx)
        return True, "%d certificates independently re-validated" % len(self.collected_certs)


def run_suite(seed=DEFAULT_SEED, full=False, only=None):
    return AcceptanceSuite(seed=seed, full=full).run(only=only)
