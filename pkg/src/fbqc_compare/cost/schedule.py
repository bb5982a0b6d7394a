"""Merge trees of 3GHZ states and their cost under type-II fusion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from ..graphs import GraphState, lc_equivalent_states, lc_isomorphic, tableau_to_graph
from ..stabilizer import StabilizerTableau, apply_hadamard, bell_fuse, ghz_tableau, tensor


@dataclass(frozen=True)
class Leaf:
    """A 3GHZ primitive on three qubit labels.

    ``hadamard[i]`` marks a local Hadamard on ``qubits[i]`` at preparation,
    which is free in the cost model.
    """

    qubits: tuple
    hadamard: tuple = (False, False, False)


@dataclass(frozen=True)
class Merge:
    """``len(pairs)`` simultaneous fusions between the outputs of two subtrees.

    Each pair is ``(qubit in left, qubit in right)``; ``hadamard[i]`` applies a
    Hadamard to the left qubit of pair ``i`` before the Bell projection.
    """

    left: "MergeTree"
    right: "MergeTree"
    pairs: tuple
    hadamard: tuple = ()

    @property
    def n(self) -> int:
        return len(self.pairs)


MergeTree = Union[Leaf, Merge]


class InvalidSchedule(ValueError):
    pass


def lower_bound(size: int) -> int:
    """Cheapest conceivable 3GHZ count for a state of ``size`` qubits."""
    if size < 3:
        raise ValueError(f"lower bound needs at least 3 qubits, got {size}")
    return (size - 2) ** 2


def _walk(tree: MergeTree, seen: set) -> tuple[frozenset, int, int, int]:
    """Validate ``tree``; return (open qubits, cost, leaves, fusions)."""
    if isinstance(tree, Leaf):
        if len(tree.qubits) != 3 or len(set(tree.qubits)) != 3:
            raise InvalidSchedule(f"leaf needs three distinct qubits: {tree.qubits}")
        dup = seen.intersection(tree.qubits)
        if dup:
            raise InvalidSchedule(f"qubit label reused across leaves: {sorted(dup)}")
        seen.update(tree.qubits)
        return frozenset(tree.qubits), 1, 1, 0
    left, cl, ml, fl = _walk(tree.left, seen)
    right, cr, mr, fr = _walk(tree.right, seen)
    if not tree.pairs:
        raise InvalidSchedule("a merge needs at least one fusion")
    used = set()
    for a, b in tree.pairs:
        if a not in left or b not in right:
            raise InvalidSchedule(f"fusion {(a, b)} is not between open qubits of left and right")
        if a in used or b in used:
            raise InvalidSchedule(f"qubit fused twice in one merge: {(a, b)}")
        used.update((a, b))
    return (left | right) - used, (cl + cr) << len(tree.pairs), ml + mr, fl + fr + len(tree.pairs)


def schedule_cost(tree: MergeTree) -> int:
    """Expected number of 3GHZ states consumed, as an exact integer."""
    return _walk(tree, set())[1]


@dataclass(frozen=True)
class TreeStats:
    leaves: int
    fusions: int
    size: int
    cost: int
    outputs: frozenset


def tree_stats(tree: MergeTree) -> TreeStats:
    out, cost, leaves, fusions = _walk(tree, set())
    return TreeStats(leaves, fusions, len(out), cost, out)


def depth(tree: MergeTree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(depth(tree.left), depth(tree.right))


# -- stabilizer simulation -------------------------------------------------

def simulate(tree: MergeTree) -> tuple[StabilizerTableau, list]:
    """Stabilizer state produced when every fusion in ``tree`` succeeds.

    Returns the tableau and the qubit labels of its columns.
    """
    tree_stats(tree)  # validates
    return _sim(tree)


def _sim(tree: MergeTree) -> tuple[StabilizerTableau, list]:
    if isinstance(tree, Leaf):
        tab = ghz_tableau(3)
        had = [i for i, h in enumerate(tree.hadamard) if h]
        if had:
            tab = apply_hadamard(tab, had)
        return tab, list(tree.qubits)
    lt, ll = _sim(tree.left)
    rt, rl = _sim(tree.right)
    tab = tensor(lt, rt)
    labels = ll + rl
    hs = tree.hadamard or (False,) * len(tree.pairs)
    for (a, b), h in zip(tree.pairs, hs):
        ia, ib = labels.index(a), labels.index(b)
        if h:
            tab = apply_hadamard(tab, [ia])
        tab = bell_fuse(tab, ia, ib)
        labels = [q for q in labels if q not in (a, b)]
    return tab, labels


def produced_state(tree: MergeTree) -> tuple[GraphState, list]:
    """Graph form of the state built by ``tree`` and the label of each vertex."""
    tab, labels = simulate(tree)
    return tableau_to_graph(tab), labels


def validate_schedule(tree: MergeTree, target: GraphState, relabel_limit: int = 10) -> bool:
    """True iff ``tree`` builds ``target`` up to local Cliffords.

    When the tree's output labels are exactly ``0..N-1`` they are taken as the
    target's qubit ids; otherwise (or if that check fails and the state is small)
    relabellings are searched as well.
    """
    try:
        graph, labels = produced_state(tree)
    except (InvalidSchedule, ValueError):
        return False
    if graph.num_qubits != target.num_qubits:
        return False
    if sorted(labels) == list(range(target.num_qubits)):
        order = np.argsort(labels)
        adj = graph.adjacency()[np.ix_(order, order)]
        if lc_equivalent_states(GraphState.from_adjacency(adj), target):
            return True
    if target.num_qubits <= relabel_limit:
        return lc_isomorphic(graph, target)
    return False


# -- graph-level fusion rule -----------------------------------------------

def apply_merge(left: GraphState, right: GraphState, pairs, kinds=None) -> GraphState:
    """Successful type-II fusions between degree-1 qubits of two graph states.

    ``pairs`` holds ``(qubit in left, qubit in right)`` using each state's own
    labels. Per pair, ``kind`` is ``"edge"`` (the two neighbours become
    adjacent) or ``"merge"`` (the right neighbour's other edges move to the
    left neighbour, which it then hangs off as a leaf). The output labels the
    surviving left qubits first, then the surviving right qubits, each in
    ascending order.
    """
    pairs = [tuple(p) for p in pairs]
    kinds = list(kinds) if kinds is not None else ["edge"] * len(pairs)
    if len(kinds) != len(pairs):
        raise ValueError("one kind per pair")
    qs = [q for p in pairs for q in (p[0], p[1] + left.num_qubits)]
    if len(set(qs)) != len(qs):
        raise ValueError("pairs share a qubit")
    off = left.num_qubits
    adj = {q: set() for q in range(off + right.num_qubits)}
    for u, v in left.edges:
        adj[u].add(v)
        adj[v].add(u)
    for u, v in right.edges:
        adj[u + off].add(v + off)
        adj[v + off].add(u + off)

    def toggle(u, v):
        if v in adj[u]:
            adj[u].discard(v)
            adj[v].discard(u)
        else:
            adj[u].add(v)
            adj[v].add(u)

    for (a, b), kind in zip(pairs, kinds):
        b += off
        if len(adj[a]) != 1 or len(adj[b]) != 1:
            raise ValueError(f"fusion needs degree-1 qubits, got degrees {len(adj[a])}, {len(adj[b])}")
        (u,), (v,) = adj[a], adj[b]
        for q in (a, b):
            for w in list(adj[q]):
                adj[w].discard(q)
            del adj[q]
        if u == b or v == a:
            raise ValueError("fused qubits are adjacent")
        if kind == "edge":
            toggle(u, v)
        elif kind == "merge":
            for w in list(adj[v]):
                if w != u:
                    toggle(v, w)
                    toggle(u, w)
            toggle(u, v)
            if v not in adj[u]:
                toggle(u, v)
        else:
            raise ValueError(f"unknown fusion kind {kind!r}")
    keep = sorted(adj)
    idx = {q: i for i, q in enumerate(keep)}
    edges = {(min(idx[u], idx[v]), max(idx[u], idx[v])) for u in keep for v in adj[u]}
    return GraphState.from_edges(len(keep), edges)
