"""Command line front end.

Every subcommand prints exactly one JSON report object on stdout (the
verify-paper subcommand prints its per-check lines first).  The report
echoes the command, hashes every input file, and re-verifies advertised
bounds before printing them.

Exit codes: 0 success, 1 a certificate was returned (or a verify check
failed), 2 bad input, 3 search budget exceeded, 70 internal invariant
failure.

``--jobs N`` is accepted for interface stability; execution is always
sequential in this version.  ``--deterministic`` drops wall-clock timing
from the report so identical runs produce identical bytes.
"""

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import acceptance
from . import backbone
from . import cograph as cographs
from . import mwis as mwis_mod
from . import oracle
from . import starpath
from .budget import SearchBudget
from .errors import BudgetExceeded, DecompositionError, FormatError, GraphError, InternalError
from .graph import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    dumps_gr,
    empty_graph,
    gen_Gn,
    gen_spqr,
    gen_tpqr,
    gen_wall,
    line_graph,
    path_graph,
    read_gr,
    write_gr,
)
from .lift import SubgraphFamily, heuristic_td, lift_decomposition, line_decomposition
from .patterns import Certificate, find_induced_embedding, pattern_graph
from .tdecomp import independence_number, read_td, validate, width, write_td

EXIT_OK = 0
EXIT_CERTIFICATE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 70

MAX_SEED = 2 ** 64


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


class RunReport:
    """Accumulates the JSON document a subcommand prints on exit."""

    def __init__(self, argv, deterministic):
        self.t0 = time.monotonic()
        self.deterministic = deterministic
        self.data = {"command": ["tinkit"] + list(argv), "inputs": {}, "outputs": {}}

    def note_input(self, label, path):
        self.data["inputs"][label] = {"path": str(path), "sha256": _sha256(path)}

    def note_written(self, label, path):
        self.data["outputs"][label] = {"path": str(path), "sha256": _sha256(path)}

    def put(self, key, value):
        self.data["outputs"][key] = value

    def emit(self):
        if not self.deterministic:
            self.data["wall_seconds"] = round(time.monotonic() - self.t0, 3)
        json.dump(self.data, sys.stdout, sort_keys=True)
        sys.stdout.write("\n")


def _add_common(sp):
    sp.add_argument("--seed", type=int, default=None,
                    help="64-bit seed for anything randomized (default %d)" % acceptance.DEFAULT_SEED)
    sp.add_argument("--deterministic", action="store_true",
                    help="omit wall-clock timing so reruns are byte-identical")
    sp.add_argument("--jobs", type=int, default=1,
                    help="worker count; accepted but execution is sequential")
    sp.add_argument("--budget", type=int, default=None,
                    help="search step budget for this invocation")


def _resolve_seed(args):
    seed = acceptance.DEFAULT_SEED if args.seed is None else args.seed
    if not (0 <= seed < MAX_SEED):
        raise GraphError("seed must fit in 64 bits")
    return seed


def _resolve_budget(args):
    if args.budget is None:
        return None
    if args.budget <= 0:
        raise GraphError("budget must be positive")
    return SearchBudget(args.budget)


def _load_weights(path, n):
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        seq = []
        for v in range(n):
            if str(v) not in data:
                raise GraphError("weights object is missing vertex %d" % v)
            seq.append(data[str(v)])
    elif isinstance(data, list):
        seq = data
    else:
        raise GraphError("weights file must hold a list or an object keyed by vertex")
    if len(seq) != n:
        raise GraphError("got %d weights for %d vertices" % (len(seq), n))
    return [mwis_mod.weight_from_json(x) for x in seq]


def _cert_json(cert):
    return cert.to_json()


# ---------------------------------------------------------------------------
# subcommands

def _cmd_gen(args, report):
    import random
    rng = random.Random(_resolve_seed(args))
    fam = args.family
    if fam == "path":
        g = path_graph(args.n)
    elif fam == "cycle":
        g = cycle_graph(args.n)
    elif fam == "complete":
        g = complete_graph(args.n)
    elif fam == "biclique":
        g = complete_bipartite(args.n, args.m if args.m is not None else args.n)
    elif fam == "spider":
        p = args.p if args.p is not None else 1
        g = gen_spqr(p, p, p)
    elif fam == "spider-line":
        p = args.p if args.p is not None else 1
        g = gen_tpqr(p, p, p)
    elif fam == "wall":
        g = gen_wall(args.n)
    elif fam == "gadget":
        g = gen_Gn(args.n).graph
    elif fam == "line-of-complete":
        g, _ = line_graph(complete_graph(args.n))
    elif fam == "random":
        p = args.prob if args.prob is not None else 0.5
        if not (0.0 <= p <= 1.0):
            raise GraphError("edge probability must lie in [0, 1]")
        g = acceptance.random_graph(rng, args.n, p)
    elif fam == "cograph":
        if args.n < 2:
            g = empty_graph(args.n)
        else:
            g = cographs.random_cograph(args.n, rng)
    else:
        raise GraphError("unknown family %r" % fam)
    report.put("vertices", g.n)
    report.put("edges", g.edge_count)
    if args.out:
        write_gr(g, args.out)
        report.note_written("graph", args.out)
    else:
        report.put("graph_text", dumps_gr(g))
    return EXIT_OK


_DETECT_KINDS = {
    "star": lambda a: ("star", {"leaves": a.d if a.d is not None else 3}),
    "path": lambda a: ("path", {"vertices": a.length}),
    "cycle": lambda a: ("cycle", {"vertices": a.length}),
    "spider": lambda a: ("s_p", {"p": a.p if a.p is not None else 1}),
    "spider-line": lambda a: ("t_p", {"p": a.p if a.p is not None else 1}),
    "k-spider": lambda a: ("k_s_p", {"k": a.k, "p": a.p if a.p is not None else 1}),
    "k-spider-line": lambda a: ("k_t_p", {"k": a.k, "p": a.p if a.p is not None else 1}),
}


def _cmd_detect(args, report):
    g = read_gr(args.graph)
    report.note_input("graph", args.graph)
    if args.pattern not in _DETECT_KINDS:
        raise GraphError("unknown pattern %r" % args.pattern)
    kind, params = _DETECT_KINDS[args.pattern](args)
    if kind in ("path", "cycle") and (args.length is None or args.length < 1):
        raise GraphError("--length is required for path and cycle patterns")
    if kind.startswith("k_") and (args.k is None or args.k < 1):
        raise GraphError("--k is required for the peeled spider patterns")
    pat = pattern_graph(kind, params)
    emb = find_induced_embedding(pat, g, budget=_resolve_budget(args))
    report.put("pattern", {"kind": kind, "params": params})
    report.put("found", emb is not None)
    if emb is not None:
        report.put("embedding", list(emb))
    return EXIT_OK


def _finish_decomposition(args, report, g, res, advertised):
    """Shared tail: certificate passthrough or re-verified decomposition."""
    if isinstance(res, Certificate):
        ok, why = res.validate()
        if not ok:
            raise InternalError("emitted certificate failed validation: %s" % why)
        report.put("certificate", _cert_json(res))
        return EXIT_CERTIFICATE
    ok, why = validate(g, res)
    if not ok:
        raise InternalError("emitted decomposition failed validation: %s" % why)
    achieved = independence_number(g, res)
    if advertised is not None and achieved > advertised:
        raise InternalError("achieved bag independence %d exceeds advertised %d"
                            % (achieved, advertised))
    report.put("width", width(res))
    report.put("bags", len(res.bags))
    report.put("independence", achieved)
    if advertised is not None:
        report.put("advertised_bound", advertised)
    if args.td_out:
        write_td(res, args.td_out)
        report.note_written("decomposition", args.td_out)
    return EXIT_OK


def _cmd_decompose(args, report):
    g = read_gr(args.graph)
    report.note_input("graph", args.graph)
    budget = _resolve_budget(args)
    if args.method == "star-path":
        d = args.d if args.d is not None else 3
        s = args.s if args.s is not None else 5
        res = starpath.decompose(g, d, s, budget=budget)
        advertised = starpath.alpha_bound(d, s)
    elif args.method == "backbone":
        d = args.d if args.d is not None else 3
        p = args.p if args.p is not None else 1
        if args.k is not None and args.k > 1:
            res = backbone.decompose_k(g, d, p, args.k, budget=budget)
            advertised = backbone.alpha_bound_k(d, p, args.k)
        else:
            res = backbone.decompose(g, d, p, budget=budget)
            advertised = backbone.alpha_bound(d, p)
    else:
        raise GraphError("unknown method %r" % args.method)
    report.put("method", args.method)
    return _finish_decomposition(args, report, g, res, advertised)


def _cmd_validate(args, report):
    g = read_gr(args.graph)
    report.note_input("graph", args.graph)
    td = read_td(args.td, g)
    report.note_input("decomposition", args.td)
    ok, why = validate(g, td)
    report.put("valid", ok)
    if not ok:
        report.put("reason", why)
        report.emit()
        return EXIT_INPUT
    report.put("width", width(td))
    report.put("bags", len(td.bags))
    report.put("independence", independence_number(g, td, budget=_resolve_budget(args)))
    return EXIT_OK


def _cmd_oracle(args, report):
    g = read_gr(args.graph)
    report.note_input("graph", args.graph)
    budget = _resolve_budget(args)
    stat = args.stat
    if stat == "alpha":
        val = oracle.alpha_exact(g, budget=budget)
        report.put("value", val)
        report.put("set", sorted(oracle.max_independent_set(g, budget=budget)))
    elif stat == "tin":
        kw = {}
        if args.max_n is not None:
            kw["max_n"] = args.max_n
        if args.witness:
            val, order = oracle.tin_exact(g, budget=budget, with_ordering=True, **kw)
            report.put("value", val)
            report.put("ordering", list(order))
        else:
            report.put("value", oracle.tin_exact(g, budget=budget, **kw))
    elif stat == "tw":
        report.put("value", oracle.tw_exact(g, budget=budget))
    elif stat == "ibn":
        report.put("value", oracle.ibn_exact(g, budget=budget))
    elif stat == "mwis":
        if not args.weights:
            raise GraphError("--weights is required for the mwis statistic")
        weights = _load_weights(args.weights, g.n)
        report.note_input("weights", args.weights)
        val, sol = oracle.mwis_exact(g, weights, budget=budget)
        report.put("weight", mwis_mod.weight_to_json(val))
        report.put("set", sorted(sol))
    else:
        raise GraphError("unknown statistic %r" % stat)
    return EXIT_OK


def _cmd_lift(args, report):
    host = read_gr(args.host)
    report.note_input("host", args.host)
    td = read_td(args.td, host)
    report.note_input("decomposition", args.td)
    with open(args.family) as fh:
        fam_data = json.load(fh)
    report.note_input("family", args.family)
    family = SubgraphFamily.from_json(host, fam_data)
    gi, lifted = lift_decomposition(family, td, budget=_resolve_budget(args))
    ok, why = validate(gi, lifted)
    if not ok:
        raise InternalError("lifted decomposition failed validation: %s" % why)
    achieved = independence_number(gi, lifted)
    advertised = width(td) + 1
    if achieved > advertised:
        raise InternalError("lifted independence %d exceeds host width+1 = %d"
                            % (achieved, advertised))
    report.put("members", len(family.members))
    report.put("width", width(lifted))
    report.put("independence", achieved)
    report.put("advertised_bound", advertised)
    if args.graph_out:
        write_gr(gi, args.graph_out)
        report.note_written("graph", args.graph_out)
    if args.td_out:
        write_td(lifted, args.td_out)
        report.note_written("decomposition", args.td_out)
    return EXIT_OK


def _cmd_line_td(args, report):
    g = read_gr(args.graph)
    report.note_input("graph", args.graph)
    budget = _resolve_budget(args)
    if args.td:
        td = read_td(args.td, g)
        report.note_input("decomposition", args.td)
    else:
        td = heuristic_td(g, budget=budget)
    lg, edge_list, lifted = line_decomposition(g, td, budget=budget)
    ok, why = validate(lg, lifted)
    if not ok:
        raise InternalError("lifted decomposition failed validation: %s" % why)
    achieved = independence_number(lg, lifted)
    advertised = width(td) + 1
    if achieved > advertised:
        raise InternalError("lifted independence %d exceeds host width+1 = %d"
                            % (achieved, advertised))
    report.put("host_width", width(td))
    report.put("line_vertices", lg.n)
    report.put("edge_map", [list(e) for e in edge_list])
    report.put("width", width(lifted))
    report.put("independence", achieved)
    report.put("advertised_bound", advertised)
    if args.graph_out:
        write_gr(lg, args.graph_out)
        report.note_written("graph", args.graph_out)
    if args.td_out:
        write_td(lifted, args.td_out)
        report.note_written("decomposition", args.td_out)
    return EXIT_OK


def _cmd_cograph(args, report):
    g = read_gr(args.graph)
    report.note_input("graph", args.graph)
    budget = _resolve_budget(args)
    if g.n == 0:
        report.put("value", 0)
        report.put("width", -1)
        return EXIT_OK
    tree = cographs.build_cotree(g, budget=budget)
    if isinstance(tree, Certificate):
        ok, why = tree.validate()
        if not ok:
            raise InternalError("emitted certificate failed validation: %s" % why)
        report.put("certificate", _cert_json(tree))
        return EXIT_CERTIFICATE
    value = max(cographs.ibn_cotree(tree), 1)
    td = cographs.decompose_cograph(g, budget=budget)
    if isinstance(td, Certificate):
        raise InternalError("cotree existed but the decomposer certified")
    ok, why = validate(g, td)
    if not ok:
        raise InternalError("emitted decomposition failed validation: %s" % why)
    achieved = independence_number(g, td)
    if achieved != value:
        raise InternalError("decomposition achieves %d, computed value is %d"
                            % (achieved, value))
    report.put("value", value)
    report.put("width", width(td))
    report.put("bags", len(td.bags))
    report.put("independence", achieved)
    if args.cotree_out:
        with open(args.cotree_out, "w") as fh:
            json.dump(cographs.cotree_to_json(tree), fh, sort_keys=True)
            fh.write("\n")
        report.note_written("cotree", args.cotree_out)
    if args.td_out:
        write_td(td, args.td_out)
        report.note_written("decomposition", args.td_out)
    return EXIT_OK


def _parse_hint(text):
    if not text:
        return None
    try:
        name, rest = text.split(":", 1)
        nums = [int(x) for x in rest.split(",")]
    except ValueError:
        raise GraphError("hint must look like star-path:3,5 or backbone:3,1")
    if name == "star-path" and len(nums) == 2:
        return ("star-path", nums[0], nums[1])
    if name == "backbone" and len(nums) == 2:
        return ("backbone", nums[0], nums[1])
    raise GraphError("hint must look like star-path:3,5 or backbone:3,1")


def _cmd_mwis(args, report):
    g = read_gr(args.graph)
    report.note_input("graph", args.graph)
    weights = _load_weights(args.weights, g.n)
    report.note_input("weights", args.weights)
    inst = mwis_mod.WeightedInstance(g, weights)
    budget = _resolve_budget(args)
    if args.td:
        td = read_td(args.td, g)
        report.note_input("decomposition", args.td)
        value, chosen = mwis_mod.solve(inst, td, budget=budget)
        strategy = "given"
    else:
        value, chosen, info = mwis_mod.solve_auto(
            inst, class_hint=_parse_hint(args.hint), budget=budget)
        strategy = info["strategy"]
        report.put("decomposition_independence", info["independence"])
    for u in chosen:
        for v in chosen:
            if u < v and g.has_edge(u, v):
                raise InternalError("reported set is not independent")
    if sum((weights[u] for u in chosen), Fraction(0)) != value:
        raise InternalError("reported weight disagrees with the reported set")
    report.put("weight", mwis_mod.weight_to_json(value))
    report.put("set", sorted(chosen))
    report.put("strategy", strategy)
    return EXIT_OK


def _cmd_verify(args, report):
    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise GraphError("--only wants a comma-separated list of check numbers")
        bad = only - set(range(1, 10))
        if bad:
            raise GraphError("unknown check numbers: %s" % sorted(bad))
    suite = acceptance.AcceptanceSuite(seed=_resolve_seed(args), full=args.full,
                                       report_timing=not args.deterministic)
    results = suite.run(only=only)
    all_passed = True
    lines = []
    for r in results:
        line = r.line()
        if args.deterministic:
            line = "criterion %d (%s): %s %s" % (
                r.ident, r.name, "PASS" if r.passed else "FAIL", r.detail)
        print(line)
        lines.append({"ident": r.ident, "name": r.name, "passed": r.passed,
                      "detail": r.detail})
        all_passed = all_passed and r.passed
    report.put("checks", lines)
    report.put("all_passed", all_passed)
    return EXIT_OK if all_passed else EXIT_CERTIFICATE


# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="tinkit",
        description="certifying tree decompositions with bounded bag independence")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("gen", help="write a named graph in .gr format")
    sp.add_argument("--family", required=True,
                    choices=["path", "cycle", "complete", "biclique", "spider",
                             "spider-line", "wall", "gadget", "line-of-complete",
                             "random", "cograph"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=None, help="second side for biclique")
    sp.add_argument("--p", type=int, default=None, help="leg length for spiders")
    sp.add_argument("--prob", type=float, default=None, help="edge probability for random")
    sp.add_argument("--out", default=None)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_gen)

    sp = sub.add_parser("detect", help="search for an induced pattern")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--pattern", required=True,
                    choices=sorted(_DETECT_KINDS))
    sp.add_argument("--d", type=int, default=None, help="leaf count for star")
    sp.add_argument("--p", type=int, default=None, help="leg length for spiders")
    sp.add_argument("--k", type=int, default=None, help="peel depth for k- patterns")
    sp.add_argument("--length", type=int, default=None, help="vertex count for path/cycle")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_detect)

    sp = sub.add_parser("decompose", help="decompose or certify an obstruction")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--method", required=True, choices=["star-path", "backbone"])
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("--s", type=int, default=None, help="path length threshold (star-path)")
    sp.add_argument("--p", type=int, default=None, help="leg length (backbone)")
    sp.add_argument("--k", type=int, default=None, help="peel depth (backbone)")
    sp.add_argument("--td-out", default=None)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_decompose)

    sp = sub.add_parser("validate", help="check a decomposition against its graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--td", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_validate)

    sp = sub.add_parser("oracle", help="exact small-graph statistics")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--stat", required=True,
                    choices=["alpha", "tin", "tw", "ibn", "mwis"])
    sp.add_argument("--weights", default=None)
    sp.add_argument("--witness", action="store_true",
                    help="include an elimination ordering for tin")
    sp.add_argument("--max-n", type=int, default=None,
                    help="raise the size guard for tin")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_oracle)

    sp = sub.add_parser("lift", help="intersection graph of a subgraph family")
    sp.add_argument("--host", required=True)
    sp.add_argument("--td", required=True)
    sp.add_argument("--family", required=True,
                    help="JSON file with a members list of vertex lists")
    sp.add_argument("--graph-out", default=None)
    sp.add_argument("--td-out", default=None)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_lift)

    sp = sub.add_parser("line-td", help="decompose the line graph via a host decomposition")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--td", default=None, help="host decomposition (default: min-fill)")
    sp.add_argument("--graph-out", default=None)
    sp.add_argument("--td-out", default=None)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_line_td)

    sp = sub.add_parser("cograph", help="exact value and decomposition for cographs")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--td-out", default=None)
    sp.add_argument("--cotree-out", default=None)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_cograph)

    sp = sub.add_parser("mwis", help="maximum weight independent set over a decomposition")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--weights", required=True)
    sp.add_argument("--td", default=None)
    sp.add_argument("--hint", default=None,
                    help="decomposition hint, star-path:D,S or backbone:D,P")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_mwis)

    sp = sub.add_parser("verify-paper", help="run the built-in verification suite")
    sp.add_argument("--full", action="store_true", help="include the slow optional instances")
    sp.add_argument("--only", default=None, help="comma-separated check numbers")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_verify)

    return ap


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed a message; map its failure to input error
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    report = RunReport(argv, args.deterministic)
    try:
        code = args.fn(args, report)
    except (FormatError, GraphError, DecompositionError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except InternalError as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL
    if code == EXIT_INPUT:
        # the command already explained itself inside the report
        return code
    report.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
