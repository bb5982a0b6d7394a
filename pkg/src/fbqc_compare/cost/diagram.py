"""Spider diagrams: the shape that a merge schedule has to carve up.

A resource state is drawn as Z spiders joined by edges that may carry a
Hadamard. Each spider with ``d`` legs stands for ``d - 2`` trivalent spiders,
i.e. ``d - 2`` 3GHZ states. Output legs carry a qubit label and a Hadamard
flag (a free local Clifford).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..graphs import GraphState, ShorCode, encoded_qubit


@dataclass
class SpiderDiagram:
    outs: dict = field(default_factory=dict)  # spider -> list of (label, hadamard)
    adj: dict = field(default_factory=dict)   # spider -> {neighbour: hadamard}
    fuse: bool = False  # merge spiders joined by plain edges when normalising

    def copy(self) -> "SpiderDiagram":
        return SpiderDiagram({s: list(v) for s, v in self.outs.items()},
                             {s: dict(v) for s, v in self.adj.items()}, self.fuse)

    def add_spider(self, outputs=()) -> int:
        s = max(self.outs, default=-1) + 1
        self.outs[s] = list(outputs)
        self.adj[s] = {}
        return s

    def connect(self, a: int, b: int, hadamard: bool = True):
        if a == b or b in self.adj[a]:
            raise ValueError(f"bad edge {(a, b)}")
        self.adj[a][b] = hadamard
        self.adj[b][a] = hadamard

    def degree(self, s: int) -> int:
        return len(self.outs[s]) + len(self.adj[s])

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj.values()) // 2

    @property
    def cyclomatic(self) -> int:
        return self.num_edges - len(self.outs) + 1

    def nodes(self) -> int:
        return sum(self.degree(s) - 2 for s in self.outs)

    def labels(self) -> list:
        return sorted(q for legs in self.outs.values() for q, _ in legs)

    def normalize(self) -> bool:
        """Fold degree-2 spiders (and fuse plain edges if ``fuse``); False if degenerate."""
        changed = True
        while changed:
            changed = False
            for s in list(self.outs):
                if s not in self.outs:
                    continue
                d = self.degree(s)
                if d < 2:
                    return False
                plain = [w for w, h in self.adj[s].items() if not h] if self.fuse else []
                if d == 2:
                    nb = list(self.adj[s].items())
                    if len(nb) == 1:
                        (w, h), = nb
                        q, hq = self.outs[s][0]
                        self.outs[w].append((q, hq ^ h))
                        del self.adj[w][s]
                    elif len(nb) == 2:
                        (a, ha), (b, hb) = nb
                        if b in self.adj[a]:
                            return False
                        del self.adj[a][s], self.adj[b][s]
                        self.adj[a][b] = self.adj[b][a] = ha ^ hb
                    else:
                        return False
                    del self.outs[s], self.adj[s]
                    changed = True
                elif plain:
                    t = plain[0]
                    del self.adj[s][t], self.adj[t][s]
                    for w, h in self.adj[t].items():
                        if w in self.adj[s]:
                            return False
                        del self.adj[w][t]
                        self.adj[s][w] = self.adj[w][s] = h
                    self.outs[s].extend(self.outs[t])
                    del self.outs[t], self.adj[t]
                    changed = True
        return True

    def components(self) -> list[list[int]]:
        seen, comps = set(), []
        for s in self.outs:
            if s in seen:
                continue
            comp, stack = [s], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def restrict(self, spiders) -> "SpiderDiagram":
        keep = set(spiders)
        return SpiderDiagram({s: list(self.outs[s]) for s in spiders},
                             {s: {w: h for w, h in self.adj[s].items() if w in keep} for s in spiders},
                             self.fuse)

    def cycle(self) -> set:
        """Spiders left after repeatedly pruning degree-1 vertices of the spider graph."""
        deg = {s: len(a) for s, a in self.adj.items()}
        alive = set(self.adj)
        stack = [s for s in alive if deg[s] <= 1]
        while stack:
            s = stack.pop()
            if s not in alive:
                continue
            alive.discard(s)
            for w in self.adj[s]:
                if w in alive:
                    deg[w] -= 1
                    if deg[w] == 1:
                        stack.append(w)
        return alive

    # -- canonical shape ---------------------------------------------------

    def _rooted(self, s, parent, skip=frozenset()):
        kids = sorted(self._rooted(w, s, skip) for w in self.adj[s] if w != parent and w not in skip)
        return (len(self.outs[s]), tuple(kids))

    def shape_key(self):
        """Canonical form up to relabelling, for trees and single-cycle diagrams.

        Only the number of outputs per spider is kept: Hadamard flags and
        labels do not change what a schedule costs.
        """
        c = self.cyclomatic
        if c == 0:
            deg = {s: len(a) for s, a in self.adj.items()}
            alive = set(self.adj)
            layer = [s for s in alive if deg[s] <= 1]
            while len(alive) > 2:
                nxt = []
                for s in layer:
                    alive.discard(s)
                    for w in self.adj[s]:
                        if w in alive:
                            deg[w] -= 1
                            if deg[w] == 1:
                                nxt.append(w)
                layer = nxt
            return ("T", min(self._rooted(r, None) for r in alive))
        if c == 1:
            cyc = self.cycle()
            start = min(cyc)
            order, prev, cur = [start], None, start
            while True:
                nxt = min(w for w in self.adj[cur] if w in cyc and w != prev)
                if nxt == start:
                    break
                order.append(nxt)
                prev, cur = cur, nxt
            labs = [(len(self.outs[s]), tuple(sorted(self._rooted(w, s) for w in self.adj[s] if w not in cyc)))
                    for s in order]
            seqs = [labs, labs[::-1]]
            return ("C", min(tuple(q[r:] + q[:r]) for q in seqs for r in range(len(labs))))
        raise NotImplementedError("shape keys cover trees and single-cycle diagrams only")

    # -- cut points --------------------------------------------------------

    def cut_points(self) -> list:
        """Every way to sever the diagram at one place.

        ``("e", u, w)`` cuts an edge. ``("s", s, E1, o1)`` splits spider ``s``
        into one part holding neighbours ``E1`` plus its first ``o1`` outputs
        and one holding the rest; both parts need at least two legs.
        """
        pts = []
        for s in sorted(self.outs):
            nb = sorted(self.adj[s])
            o = len(self.outs[s])
            for r in range(len(nb) + 1):
                for e1 in itertools.combinations(nb, r):
                    if nb and nb[0] not in e1:
                        continue
                    for o1 in range(o + 1):
                        if r + o1 < 2 or len(nb) - r + o - o1 < 2:
                            continue
                        if not nb and o1 > o - o1:
                            continue
                        pts.append(("s", s, frozenset(e1), o1))
            for w in nb:
                if s < w:
                    pts.append(("e", s, w))
        return pts

    def breaks_cycle(self, point, cyc) -> bool:
        if point[0] == "e":
            return point[1] in cyc and point[2] in cyc
        s = point[1]
        if s not in cyc:
            return False
        a, b = [w for w in self.adj[s] if w in cyc]
        return (a in point[2]) != (b in point[2])

    def apply_cut(self, group, fresh):
        """Sever at every point in ``group``.

        Returns ``(A, B, pairs)`` with ``pairs`` as ``(label in A, label in B,
        hadamard)``, or None when the cut does not leave two valid pieces.
        ``fresh()`` supplies labels for the new fusion qubits.
        """
        d = self.copy()
        nid = max(d.outs) + 1
        ports = []
        for p in group:
            qa, qb = fresh(), fresh()
            if p[0] == "e":
                _, u, w = p
                if w not in d.adj[u]:
                    return None
                h = d.adj[u].pop(w)
                del d.adj[w][u]
                d.outs[u].append((qa, False))
                d.outs[w].append((qb, False))
                ports.append((u, qa, w, qb, h))
            else:
                _, s, e1, o1 = p
                t = nid
                nid += 1
                legs = d.outs[s]
                d.outs[s] = legs[:o1] + [(qa, False)]
                d.outs[t] = legs[o1:] + [(qb, False)]
                d.adj[t] = {}
                for w in [w for w in d.adj[s] if w not in e1]:
                    h = d.adj[s].pop(w)
                    del d.adj[w][s]
                    d.adj[t][w] = d.adj[w][t] = h
                ports.append((s, qa, t, qb, False))
        comps = d.components()
        if len(comps) != 2:
            return None
        side = {s: i for i, c in enumerate(comps) for s in c}
        parts = []
        for c in comps:
            piece = d.restrict(c)
            if not piece.normalize() or piece.nodes() < 1:
                return None
            parts.append(piece)
        pairs = []
        for u, qa, w, qb, h in ports:
            if side[u] == side[w]:
                return None
            pairs.append((qa, qb, h) if side[u] == 0 else (qb, qa, h))
        return parts[0], parts[1], pairs


def diagram_from_graph(state: GraphState) -> SpiderDiagram:
    """One spider per qubit with its output leg; graph edges become Hadamard edges."""
    if state.num_qubits < 3 or not state.is_connected():
        raise ValueError("need a connected graph state on at least 3 qubits")
    d = SpiderDiagram()
    for q in range(state.num_qubits):
        d.add_spider([(q, False)])
    for u, v in state.sorted_edges():
        d.connect(u, v, True)
    if not d.normalize():
        raise ValueError("graph does not reduce to a valid diagram")
    return d


def encoded_diagram(state: GraphState, code: ShorCode, fuse: bool = False) -> SpiderDiagram:
    """Diagram of ``state`` with every qubit concatenated into ``code``.

    Qubit ``(v, block, pos)`` keeps the label ``encoded_qubit(v, block, pos)``.
    By default the encoder spiders stay as drawn: a spider is never merged
    with a neighbour across a plain edge. With ``fuse`` they are merged, which
    gives the search more ways to split them (and sometimes cheaper schedules)
    at an exponential cost in the merged spider's degree.
    """
    if state.num_qubits < 2 or not state.is_connected():
        raise ValueError("need a connected graph state")
    d = SpiderDiagram(fuse=fuse)
    vs = [d.add_spider() for _ in range(state.num_qubits)]
    for u, w in state.sorted_edges():
        d.connect(vs[u], vs[w], True)
    for v in range(state.num_qubits):
        x = d.add_spider()
        d.connect(vs[v], x, True)
        for i in range(code.n):
            b = d.add_spider([(encoded_qubit(v, i, j, code), False) for j in range(code.m)])
            d.connect(x, b, True)
    if not d.normalize():
        raise ValueError("encoded state does not reduce to a valid diagram")
    return d
