"""Maximum weight independent sets by dynamic programming over a tree
decomposition.

The running time is governed by the number of independent subsets per
bag rather than bag size, so decompositions with small bag independence
stay fast even when bags are wide.  Weights are exact rationals
throughout; no floats ever enter the arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from . import backbone, cograph, lift, oracle, starpath
from .budget import SearchBudget, ensure_budget
from .errors import DecompositionError, GraphError, InternalError
from .graph import Graph, bit_list, bits_of
from .tdecomp import TreeDecomposition, independence_number, validate


class WeightedInstance:
    """A graph with one nonnegative rational weight per vertex."""

    __slots__ = ("graph", "weights")

    def __init__(self, graph: Graph, weights) -> None:
        ws = tuple(Fraction(w) for w in weights)
        if len(ws) != graph.n:
            raise GraphError(
                f"expected {graph.n} weights, got {len(ws)}"
            )
        for i, w in enumerate(ws):
            if w < 0:
                raise GraphError(f"weight of vertex {i} is negative")
        self.graph = graph
        self.weights = ws

    def weight_of(self, vertices) -> Fraction:
        return sum((self.weights[v] for v in vertices), Fraction(0))

    def to_json(self) -> dict:
        return {"weights": [weight_to_json(w) for w in self.weights]}

    @classmethod
    def from_json(cls, graph: Graph, data: dict) -> "WeightedInstance":
        if "weights" not in data:
            raise GraphError("weight object needs a 'weights' list")
        return cls(graph, [weight_from_json(w) for w in data["weights"]])


def weight_to_json(w: Fraction) -> dict:
    return {"num": w.numerator, "den": w.denominator}


def weight_from_json(obj) -> Fraction:
    if isinstance(obj, bool):
        raise GraphError("weights must be numbers, not booleans")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return Fraction(obj[0], obj[1])
    if isinstance(obj, dict) and set(obj) <= {"num", "den"}:
        return Fraction(obj["num"], obj.get("den", 1))
    raise GraphError(f"cannot read a weight from {obj!r}")


class _Op:
    """One step of the rooted normal form: an empty start, a vertex
    introduction, a vertex forget, or a two-branch join."""

    __slots__ = ("kind", "bag", "v", "left", "right")

    def __init__(self, kind, bag, v=None, left=None, right=None):
        self.kind = kind
        self.bag = bag
        self.v = v
        self.left = left
        self.right = right


def _rooted_children(td: TreeDecomposition) -> list[list[int]]:
    """Children lists for the tree rooted at node 0."""
    n = td.node_count
    adj = [[] for _ in range(n)]
    for a, b in td.tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    children: list[list[int]] = [[] for _ in range(n)]
    seen = [False] * n
    seen[0] = True
    queue = [0]
    for t in queue:
        for u in sorted(adj[t]):
            if not seen[u]:
                seen[u] = True
                children[t].append(u)
                queue.append(u)
    return children


def _nice_ops(td: TreeDecomposition) -> _Op:
    """Chain of introduce / forget / join steps equivalent to the
    decomposition, rooted at node 0.  Never part of the public surface;
    callers only ever see the original decomposition."""
    children = _rooted_children(td)
    tops: dict[int, _Op] = {}
    stack = [(0, False)]
    while stack:
        t, done = stack.pop()
        if not done:
            stack.append((t, True))
            for c in children[t]:
                stack.append((c, False))
            continue
        bag = td.bags[t]
        branches = []
        for c in children[t]:
            op = tops.pop(c)
            cur = set(td.bags[c])
            for v in sorted(cur - bag):
                cur.discard(v)
                op = _Op("forget", frozenset(cur), v=v, left=op)
            for v in sorted(bag - cur):
                cur.add(v)
                op = _Op("introduce", frozenset(cur), v=v, left=op)
            branches.append(op)
        if not branches:
            op = _Op("empty", frozenset())
            cur = set()
            for v in sorted(bag):
                cur.add(v)
                op = _Op("introduce", frozenset(cur), v=v, left=op)
        else:
            op = branches[0]
            for other in branches[1:]:
                op = _Op("join", bag, left=op, right=other)
        tops[t] = op
    return tops[0]


def _postorder(root: _Op) -> list[_Op]:
    out = []
    stack = [(root, False)]
    while stack:
        op, done = stack.pop()
        if done:
            out.append(op)
            continue
        stack.append((op, True))
        if op.left is not None:
            stack.append((op.left, False))
        if op.right is not None:
            stack.append((op.right, False))
    return out


def _bag_states(g: Graph, bag, memo, budget) -> list[frozenset]:
    if bag not in memo:
        memo[bag] = [
            frozenset(bit_list(mask))
            for mask in oracle.enumerate_independent_sets(g, bag)
        ]
        budget.spend(len(memo[bag]))
    return memo[bag]


def solve(
    inst: WeightedInstance,
    td: TreeDecomposition,
    budget: SearchBudget | None = None,
) -> tuple[Fraction, set]:
    """Best independent set weight and one set achieving it.

    The decomposition must be valid for the instance graph and cover
    every vertex.  The result is re-checked before returning: the set
    is independent and its weight matches the reported optimum.
    """
    budget = ensure_budget(budget)
    g = inst.graph
    ok, why = validate(g, td)
    if not ok:
        raise DecompositionError(f"invalid decomposition: {why}")
    if len(td.coverage()) != g.n:
        raise DecompositionError(
            "the decomposition must cover every vertex"
        )

    root = _nice_ops(td)
    memo: dict = {}
    tables: dict[int, dict] = {}
    for op in _postorder(root):
        if op.kind == "empty":
            tab = {frozenset(): Fraction(0)}
        elif op.kind == "introduce":
            prev = tables[id(op.left)]
            v = op.v
            tab = {}
            for state in _bag_states(g, op.bag, memo, budget):
                if v in state:
                    tab[state] = prev[state - {v}] + inst.weights[v]
                else:
                    tab[state] = prev[state]
        elif op.kind == "forget":
            prev = tables[id(op.left)]
            v = op.v
            tab = {}
            for state in _bag_states(g, op.bag, memo, budget):
                best = prev[state]
                grown = state | {v}
                if grown in prev and prev[grown] > best:
                    best = prev[grown]
                tab[state] = best
        else:
            a = tables[id(op.left)]
            b = tables[id(op.right)]
            tab = {
                state: a[state] + b[state] - inst.weight_of(state)
                for state in a
            }
        budget.spend(len(tab))
        tables[id(op)] = tab

    final = tables[id(root)]
    best_val = max(final.values())
    best_state = min(
        (s for s, val in final.items() if val == best_val),
        key=lambda s: sorted(s),
    )

    chosen: set[int] = set()
    walk = [(root, best_state)]
    while walk:
        op, state = walk.pop()
        if op.kind == "empty":
            continue
        if op.kind == "introduce":
            if op.v in state:
                chosen.add(op.v)
                walk.append((op.left, state - {op.v}))
            else:
                walk.append((op.left, state))
        elif op.kind == "forget":
            prev = tables[id(op.left)]
            grown = state | {op.v}
            if grown in prev and prev[grown] > prev[state]:
                walk.append((op.left, grown))
            else:
                walk.append((op.left, state))
        else:
            walk.append((op.left, state))
            walk.append((op.right, state))

    if bits_of(chosen) & ~g.full_mask:
        raise InternalError("solution leaked outside the graph")
    for v in chosen:
        if g.adj_bits(v) & bits_of(chosen):
            raise InternalError("reported solution is not independent")
    if inst.weight_of(chosen) != best_val:
        raise InternalError("reported weight disagrees with the set")
    return best_val, chosen


def solve_auto(
    inst: WeightedInstance,
    class_hint=None,
    budget: SearchBudget | None = None,
) -> tuple[Fraction, set, dict]:
    """Pick a decomposition strategy, solve, and report what was used.

    With no hint: the exact cotree route when the graph has no induced
    four-vertex path, otherwise a min-fill heuristic decomposition.  A
    hint like ("star-path", d, s) or ("backbone", d, p) tries that
    decomposer first and falls back to the heuristic when the graph is
    outside the class.  The info dict records the strategy and the
    decomposition independence actually achieved.
    """
    budget = ensure_budget(budget)
    g = inst.graph
    td = None
    strategy = None
    if class_hint is not None:
        if isinstance(class_hint, dict):
            name = class_hint.get("strategy")
            args = class_hint
        else:
            name = class_hint[0]
            if name == "star-path":
                args = {"d": class_hint[1], "s": class_hint[2]}
            else:
                args = {"d": class_hint[1], "p": class_hint[2]}
        if name == "star-path":
            got = starpath.decompose(g, args["d"], args["s"], budget)
        elif name == "backbone":
            got = backbone.decompose(g, args["d"], args["p"], budget)
        else:
            raise GraphError(f"unknown strategy hint {name!r}")
        if isinstance(got, TreeDecomposition):
            td, strategy = got, name
    if td is None:
        if g.n == 0:
            td, strategy = decompose_trivial(g), "cograph"
        else:
            ct = cograph.build_cotree(g, budget)
            if isinstance(ct, cograph.Cotree):
                got = cograph.decompose_cograph(g, budget)
                if not isinstance(got, TreeDecomposition):
                    raise InternalError(
                        "cotree route lost its decomposition"
                    )
                td, strategy = got, "cograph"
            else:
                td, strategy = lift.heuristic_td(g, budget), "heuristic"
    weight, chosen = solve(inst, td, budget)
    info = {
        "strategy": strategy,
        "independence": independence_number(g, td, budget),
    }
    return weight, chosen, info


def decompose_trivial(g: Graph) -> TreeDecomposition:
    """Single empty bag; only sensible for the empty graph."""
    return TreeDecomposition(g, [frozenset()], [])
