"""Brute-force optimum for small targets, independent of the spider search.

States are built by stabilizer simulation: fuse any qubit of one state with
any qubit of another (one or two pairs at once), with an arbitrary local
Clifford on the fused qubit first. States are kept up to local Cliffords and
relabelling, and explored cheapest first.
"""

from __future__ import annotations

import heapq
import itertools

import networkx as nx

from ..graphs import GraphState, lc_orbit

# The search fuses tens of thousands of tiny states, so it keeps its own
# tableau: one Python int per generator, bit q for X_q and bit N+q for Z_q.

# the six single-qubit Cliffords modulo Paulis: images of (X, Z) as (x, z) bits
_LOCAL = (((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 0), (1, 1)),
          ((1, 1), (0, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 0)))


def _graph_rows(g: GraphState, offset: int, N: int) -> list:
    rows = []
    for q in range(g.num_qubits):
        r = 1 << (offset + q)
        for w in g.neighbors(q):
            r |= 1 << (N + offset + w)
        rows.append(r)
    return rows


def _local(rows: list, q: int, k: int, N: int) -> list:
    (xx, xz), (zx, zz) = _LOCAL[k]
    bx, bz = 1 << q, 1 << (N + q)
    out = []
    for r in rows:
        x, z = bool(r & bx), bool(r & bz)
        nx_ = (x and xx) ^ (z and zx)
        nz = (x and xz) ^ (z and zz)
        r &= ~(bx | bz)
        out.append(r | (bx if nx_ else 0) | (bz if nz else 0))
    return out


def _anti(r: int, p: int, N: int) -> int:
    mask = (1 << N) - 1
    return bin(((r & mask) & (p >> N)) ^ ((r >> N) & (p & mask))).count("1") & 1


def _fuse(rows: list, a: int, b: int, N: int) -> list:
    for probe in ((1 << a) | (1 << b), (1 << (N + a)) | (1 << (N + b))):
        hit = [i for i, r in enumerate(rows) if _anti(r, probe, N)]
        if hit:
            piv = rows[hit[0]]
            for i in hit[1:]:
                rows[i] ^= piv
            rows = rows[:hit[0]] + rows[hit[0] + 1:]
    clear = ~((1 << a) | (1 << b) | (1 << (N + a)) | (1 << (N + b)))
    return [r & clear for r in rows]


def _to_graph(rows: list, alive: list, N: int) -> GraphState | None:
    n = len(alive)
    comp = []
    for r in rows:
        c = 0
        for i, q in enumerate(alive):
            if r >> q & 1:
                c |= 1 << i
            if r >> (N + q) & 1:
                c |= 1 << (n + i)
        comp.append(c)
    red, piv = _rref(comp, 2 * n)
    if len(red) != n:
        return None
    zpiv = [p - n for p in piv if p >= n]
    if zpiv:
        comp = [_swap_xz(r, zpiv, n) for r in red]
        red, piv = _rref(comp, 2 * n)
    if piv[:n] != list(range(n)):
        return None
    edges = set()
    for i, r in enumerate(red[:n]):
        for j in range(n):
            if j != i and r >> (n + j) & 1:
                edges.add((min(i, j), max(i, j)))
    return GraphState.from_edges(n, edges)


def _swap_xz(r: int, qs, n: int) -> int:
    for q in qs:
        x, z = r >> q & 1, r >> (n + q) & 1
        r &= ~((1 << q) | (1 << (n + q)))
        r |= (z << q) | (x << (n + q))
    return r


def _rref(rows: list, width: int):
    rows = [r for r in rows]
    piv, k = [], 0
    for c in range(width):
        bit = 1 << c
        sel = next((i for i in range(k, len(rows)) if rows[i] & bit), None)
        if sel is None:
            continue
        rows[k], rows[sel] = rows[sel], rows[k]
        for i in range(len(rows)):
            if i != k and rows[i] & bit:
                rows[i] ^= rows[k]
        piv.append(c)
        k += 1
    return [r for r in rows if r][:k], piv


class _Classes:
    """Local-Clifford-and-relabelling classes of small graph states."""

    def __init__(self):
        self.member: dict = {}   # labelled graph -> class id
        self.reps: list = []     # class id -> (representative, WL hash)
        self.by_sig: dict = {}   # orbit hash set -> class ids

    def class_of(self, g: GraphState) -> int:
        key = (g.num_qubits, g.edges)
        if key in self.member:
            return self.member[key]
        orbit = lc_orbit(g)
        nxs = [m.to_networkx() for m in orbit]
        hashes = [nx.weisfeiler_lehman_graph_hash(h) for h in nxs]
        sig = (g.num_qubits, frozenset(hashes))
        cid = None
        for c in self.by_sig.get(sig, []):
            rep, rh = self.reps[c]
            if any(h == rh and nx.is_isomorphic(rep, m) for h, m in zip(hashes, nxs)):
                cid = c
                break
        if cid is None:
            cid = len(self.reps)
            self.reps.append((nxs[0], hashes[0]))
            self.by_sig.setdefault(sig, []).append(cid)
        for m in orbit:
            self.member[(m.num_qubits, m.edges)] = cid
        return cid


def _fusions(g1: GraphState, g2: GraphState, max_pairs: int):
    n1, n2 = g1.num_qubits, g2.num_qubits
    N = n1 + n2
    base = _graph_rows(g1, 0, N) + _graph_rows(g2, n1, N)
    for k in range(1, max_pairs + 1):
        for qa in itertools.combinations(range(n1), k):
            for qb in itertools.permutations(range(n1, N), k):
                fused = set(qa) | set(qb)
                alive = [q for q in range(N) if q not in fused]
                for cliffs in itertools.product(range(6), repeat=k):
                    rows = base
                    for a, c in zip(qa, cliffs):
                        if c:
                            rows = _local(rows, a, c, N)
                    for a, b in zip(qa, qb):
                        rows = _fuse(rows, a, b, N)
                    out = _to_graph(rows, alive, N)
                    if out is not None and out.num_qubits >= 3 and out.is_connected():
                        yield k, out


def exhaustive_cost(target: GraphState, cost_cap: int, max_pairs: int = 2, max_size: int | None = None):
    """Cheapest cost of building ``target`` (up to local Cliffords), or None above ``cost_cap``.

    Meant for targets of at most about nine qubits.
    """
    if max_size is None:
        max_size = target.num_qubits + 1
    classes = _Classes()
    goal = classes.class_of(target)
    ghz = GraphState.from_edges(3, [(0, 1), (1, 2)])
    heap = [(1, 0, ghz)]
    tick = itertools.count(1)
    best = {classes.class_of(ghz): 1}
    done: set = set()
    final: list[tuple[int, GraphState]] = []
    while heap:
        cost, _, g = heapq.heappop(heap)
        cid = classes.class_of(g)
        if cid in done:
            continue
        done.add(cid)
        if cid == goal:
            return cost
        final.append((cost, g))
        for c2, h in final:
            if (cost + c2) << 1 > cost_cap:
                continue
            if g.num_qubits + h.num_qubits - 2 * max_pairs > max_size:
                continue
            pairs = max_pairs if (cost + c2) << 2 <= cost_cap else 1
            for k, out in _fusions(g, h, pairs):
                new = (cost + c2) << k
                if new > cost_cap or out.num_qubits > max_size:
                    continue
                oid = classes.class_of(out)
                if oid in done or best.get(oid, cost_cap + 1) <= new:
                    continue
                best[oid] = new
                heapq.heappush(heap, (new, next(tick), out))
    return None
