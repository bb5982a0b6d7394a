"""Finding cheap merge schedules.

The default engine is an exact search over recursive cut sequences of a spider
diagram, memoised on canonical shapes with branch-and-bound. Diagrams with
more than one independent cycle, or searches that blow the shape budget, fall
back to simulated annealing over merge orders of the trivalent resolution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..graphs import GraphState
from .diagram import SpiderDiagram, diagram_from_graph
from .schedule import Leaf, Merge, MergeTree, schedule_cost, validate_schedule


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ScheduleResult:
    tree: MergeTree
    cost: int
    method: str
    target_matched: bool | None = None
    shapes: int = 0


_F = [0, 1]


def _balanced(k: int) -> int:
    """Cost of the cheapest conceivable tree over ``k`` trivalent spiders."""
    while len(_F) <= k:
        j = len(_F)
        _F.append(2 * (_F[j // 2] + _F[j - j // 2]))
    return _F[k]


def _none():
    return None


class ShapeSearch:
    """Exact minimum over cut sequences, with a cap on distinct shapes.

    A diagram with a cycle is only opened by cutting the cycle at two places
    at once; tree-shaped pieces may be cut anywhere.
    """

    def __init__(self, max_shapes: int = 200_000):
        self.max_shapes = max_shapes
        self.memo: dict = {}

    def _groups(self, d: SpiderDiagram):
        pts = d.cut_points()
        if d.cyclomatic == 0:
            for p in pts:
                yield (p,)
            return
        cyc = d.cycle()
        br = [p for p in pts if d.breaks_cycle(p, cyc)]
        for a, b in itertools.combinations(br, 2):
            if a[0] == "s" and b[0] == "s" and a[1] == b[1]:
                continue
            yield (a, b)

    def _candidates(self, d: SpiderDiagram):
        cands = {}
        for group in self._groups(d):
            cut = d.apply_cut(group, _none)
            if cut is None:
                continue
            a, b, _ = cut
            key = (len(group),) + tuple(sorted((a.shape_key(), b.shape_key()), key=repr))
            if key not in cands:
                bound = (_balanced(a.nodes()) + _balanced(b.nodes())) << len(group)
                cands[key] = (bound, len(group), a, b, group)
        return sorted(cands.values(), key=lambda c: c[0])

    def cost(self, d: SpiderDiagram) -> int:
        if d.nodes() == 1:
            return 1
        key = d.shape_key()
        if key in self.memo:
            return self.memo[key]
        if len(self.memo) >= self.max_shapes:
            raise SearchBudgetExceeded(f"more than {self.max_shapes} shapes")
        best = None
        for bound, k, a, b, _ in self._candidates(d):
            if best is not None and bound >= best:
                break
            c = (self.cost(a) + self.cost(b)) << k
            if best is None or c < best:
                best = c
        if best is None:
            raise ValueError("diagram admits no cut")
        self.memo[key] = best
        return best

    def build(self, d: SpiderDiagram, fresh) -> MergeTree:
        """A merge tree achieving ``cost(d)``, with concrete qubit labels."""
        if d.nodes() == 1:
            (s,) = d.outs
            legs = d.outs[s]
            return Leaf(tuple(q for q, _ in legs), tuple(h for _, h in legs))
        target = self.cost(d)
        for _, k, a, b, group in self._candidates(d):
            if (self.cost(a) + self.cost(b)) << k == target:
                a, b, pairs = d.apply_cut(group, fresh)
                return Merge(self.build(a, fresh), self.build(b, fresh),
                             tuple((p, q) for p, q, _ in pairs),
                             tuple(h for _, _, h in pairs))
        raise AssertionError("memoised optimum not reproducible")


def _label_counter(diagram: SpiderDiagram):
    nxt = [max(diagram.labels(), default=-1) + 1]

    def fresh():
        q = nxt[0]
        nxt[0] += 1
        return q
    return fresh


def exact_schedule(diagram: SpiderDiagram, max_shapes: int = 200_000) -> ScheduleResult:
    search = ShapeSearch(max_shapes)
    tree = search.build(diagram, _label_counter(diagram))
    return ScheduleResult(tree, schedule_cost(tree), "exact", shapes=len(search.memo))


# -- annealing fallback ----------------------------------------------------

@dataclass
class _Resolved:
    """Trivalent resolution: 3GHZ nodes joined by wires."""

    legs: list    # node -> list of ("out", label, had) or ("wire", wire id)
    wires: list   # wire -> (node a, label a, node b, label b, hadamard)


def resolve(diagram: SpiderDiagram) -> _Resolved:
    d = diagram.copy()
    if not d.normalize():
        raise ValueError("degenerate diagram")
    fresh = _label_counter(d)
    legs, wires = [], []
    edge_wire = {}
    for s in sorted(d.outs):
        items = [("out", q, h) for q, h in d.outs[s]]
        for w in sorted(d.adj[s]):
            e = (min(s, w), max(s, w))
            if e not in edge_wire:
                edge_wire[e] = len(wires)
                wires.append([None, None, None, None, d.adj[s][w]])
            items.append(("edge", edge_wire[e]))
        # caterpillar: first and last nodes take two legs, middle ones take one
        k = len(items) - 2
        base = len(legs)
        chunks = [items[:2]] + [[it] for it in items[2:-2]] + [items[-2:]] if k > 1 else [items]
        for i, chunk in enumerate(chunks):
            node = []
            for it in chunk:
                if it[0] == "out":
                    node.append(it)
                else:
                    w = wires[it[1]]
                    q = fresh()
                    slot = 0 if w[0] is None else 2
                    w[slot], w[slot + 1] = base + i, q
                    node.append(("wire", it[1], q))
            if i > 0:
                q1, q2 = fresh(), fresh()
                wires.append([base + i - 1, q1, base + i, q2, False])
                legs[base + i - 1].append(("wire", len(wires) - 1, q1))
                node.insert(0, ("wire", len(wires) - 1, q2))
            legs.append(node)
    return _Resolved(legs, [tuple(w) for w in wires])


def _leaf(node) -> Leaf:
    qs, hs = [], []
    for it in node:
        if it[0] == "out":
            qs.append(it[1])
            hs.append(it[2])
        else:
            qs.append(it[2])
            hs.append(False)
    return Leaf(tuple(qs), tuple(hs))


class _OrderEvaluator:
    def __init__(self, res: _Resolved):
        self.res = res
        self.W = len(res.wires)
        self.N = len(res.legs)
        self.inc = {}
        for wid, (a, _, b, _, _) in enumerate(res.wires):
            self.inc.setdefault(a, []).append(wid)
            self.inc.setdefault(b, []).append(wid)

    def cost(self, order) -> int:
        parent = list(range(self.N))
        cost = [1] * self.N

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        members = {i: [i] for i in range(self.N)}
        wires = self.res.wires
        inc = self.inc
        done = [False] * self.W
        for wid in order:
            if done[wid]:
                continue
            ra, rb = find(wires[wid][0]), find(wires[wid][2])
            # every wire between the two fragments is fused at once
            k = 0
            for node in members[ra]:
                for w in inc[node]:
                    if not done[w]:
                        a, b = find(wires[w][0]), find(wires[w][2])
                        if {a, b} == {ra, rb}:
                            done[w] = True
                            k += 1
            parent[rb] = ra
            cost[ra] = (cost[ra] + cost[rb]) << k
            members[ra] += members.pop(rb)
        return cost[find(0)]

    def tree(self, order) -> MergeTree:
        parent = list(range(self.N))
        trees = {i: _leaf(node) for i, node in enumerate(self.res.legs)}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x
        wires = self.res.wires
        done = [False] * self.W
        for wid in order:
            if done[wid]:
                continue
            ra, rb = find(wires[wid][0]), find(wires[wid][2])
            pairs, hs = [], []
            for w, (a, qa, b, qb, h) in enumerate(wires):
                if done[w]:
                    continue
                fa, fb = find(a), find(b)
                if (fa, fb) == (ra, rb):
                    pairs.append((qa, qb))
                elif (fa, fb) == (rb, ra):
                    pairs.append((qb, qa))
                else:
                    continue
                hs.append(h)
                done[w] = True
            trees[ra] = Merge(trees[ra], trees.pop(rb), tuple(pairs), tuple(hs))
            parent[rb] = ra
        return trees[find(0)]


def greedy_order(res: _Resolved) -> list:
    """Repeatedly perform the cheapest available merge."""
    parent = list(range(len(res.legs)))
    cost = [1] * len(res.legs)

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x
    order, left = [], set(range(len(res.wires)))
    while left:
        groups = {}
        for w in sorted(left):
            ra, rb = find(res.wires[w][0]), find(res.wires[w][2])
            key = (min(ra, rb), max(ra, rb))
            groups.setdefault(key, []).append(w)
        best = min(groups.items(), key=lambda kv: ((cost[kv[0][0]] + cost[kv[0][1]]) << len(kv[1]), kv[0]))
        (ra, rb), ws = best
        order.extend(ws)
        left.difference_update(ws)
        parent[rb] = ra
        cost[ra] = (cost[ra] + cost[rb]) << len(ws)
    return order


def _anneal_run(ev: _OrderEvaluator, start: list, steps: int, rng: np.random.Generator):
    cur = list(start)
    cur_c = ev.cost(cur)
    best, best_c = list(cur), cur_c
    t0 = max(1.0, 0.05 * cur_c)
    t1 = 1e-3 * t0
    n = len(cur)
    for i in range(steps):
        if n < 2:
            break
        temp = t0 * (t1 / t0) ** (i / max(1, steps - 1))
        a, b = rng.integers(0, n, size=2)
        if a == b:
            continue
        cand = list(cur)
        if rng.random() < 0.5:
            cand[a], cand[b] = cand[b], cand[a]
        else:
            cand.insert(b, cand.pop(a))
        c = ev.cost(cand)
        if c <= cur_c or rng.random() < math.exp(-(c - cur_c) / temp):
            cur, cur_c = cand, c
            if c < best_c or (c == best_c and cand < best):
                best, best_c = list(cand), c
    return best_c, best


def anneal_schedule(diagram: SpiderDiagram, budget: int = 20_000, seed: int = 0,
                    restarts: int = 16) -> ScheduleResult:
    """Greedy start, then ``restarts`` independent annealing runs seeded by ``seed + r``."""
    res = resolve(diagram)
    ev = _OrderEvaluator(res)
    start = greedy_order(res)
    best_c, best = ev.cost(start), start
    steps = max(1, budget // restarts)
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        c, order = _anneal_run(ev, start, steps, rng)
        if c < best_c or (c == best_c and order < best):
            best_c, best = c, order
    tree = ev.tree(best)
    return ScheduleResult(tree, schedule_cost(tree), "anneal")


def optimize_schedule(target, search_budget: int = 200_000, seed: int = 0,
                      method: str = "auto", validate: bool = True) -> ScheduleResult:
    """Cheapest merge schedule found for ``target`` (a GraphState or SpiderDiagram).

    ``search_budget`` caps distinct shapes for the exact search and annealing
    steps for the fallback. ``validate`` checks by stabilizer simulation that
    the tree builds the target (GraphState targets only).
    """
    diagram = diagram_from_graph(target) if isinstance(target, GraphState) else target.copy()
    if not diagram.normalize():
        raise ValueError("target reduces to a degenerate diagram")
    if method not in ("auto", "exact", "anneal"):
        raise ValueError(f"unknown method {method!r}")
    result = None
    if method in ("auto", "exact") and diagram.cyclomatic <= 1:
        try:
            result = exact_schedule(diagram, search_budget)
        except SearchBudgetExceeded:
            if method == "exact":
                raise
    elif method == "exact":
        raise ValueError("exact search handles at most one cycle")
    if result is None:
        result = anneal_schedule(diagram, search_budget, seed)
    if validate and isinstance(target, GraphState):
        ok = validate_schedule(result.tree, target)
        result = ScheduleResult(result.tree, result.cost, result.method, ok, result.shapes)
    return result
