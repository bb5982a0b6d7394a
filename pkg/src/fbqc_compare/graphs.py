"""Resource states as graph states, their named families, and Shor encodings."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import networkx as nx
import numpy as np

from .stabilizer import StabilizerTableau, lc_equivalent, to_graph_form


@dataclass(frozen=True)
class GraphState:
    num_qubits: int
    edges: frozenset

    def __post_init__(self):
        clean = set()
        for e in self.edges:
            u, v = (int(q) for q in e)
            if u == v:
                raise ValueError(f"self-loop on qubit {u}")
            if not (0 <= u < self.num_qubits and 0 <= v < self.num_qubits):
                raise ValueError(f"edge {(u, v)} out of range for {self.num_qubits} qubits")
            pair = (min(u, v), max(u, v))
            if pair in clean:
                raise ValueError(f"duplicate edge {pair}")
            clean.add(pair)
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, num_qubits: int, edges) -> "GraphState":
        return cls(num_qubits, frozenset(tuple(e) for e in edges))

    @classmethod
    def from_adjacency(cls, adj: np.ndarray) -> "GraphState":
        n = adj.shape[0]
        return cls(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n) if adj[i, j]))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, q: int) -> set[int]:
        return {v if u == q else u for u, v in self.edges if q in (u, v)}

    def degree(self, q: int) -> int:
        return sum(1 for e in self.edges if q in e)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.num_qubits, self.num_qubits), dtype=np.uint8)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.num_qubits))
        g.add_edges_from(self.edges)
        return g

    def is_connected(self) -> bool:
        return self.num_qubits > 0 and nx.is_connected(self.to_networkx())

    def to_text(self) -> str:
        lines = [f"qubits {self.num_qubits}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GraphState":
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or not lines[0].startswith("qubits"):
            raise ValueError("edge-list text must start with 'qubits N'")
        n = int(lines[0].split()[1])
        edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
        if any(len(e) != 2 for e in edges):
            raise ValueError("each edge line must hold exactly two qubit ids")
        return cls.from_edges(n, edges)

    @classmethod
    def read(cls, path) -> "GraphState":
        return cls.from_text(Path(path).read_text())


@dataclass(frozen=True)
class ShorCode:
    """{n,m} parity code: n blocks ("X-repetitions") of m qubits ("Z-repetitions")."""

    n: int
    m: int

    def __post_init__(self):
        if int(self.n) < 1 or int(self.m) < 1:
            raise ValueError(f"Shor code needs n, m >= 1, got {{{self.n},{self.m}}}")

    @classmethod
    def parse(cls, text: str) -> "ShorCode":
        parts = text.strip().strip("{}").split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'n,m', got {text!r}")
        return cls(int(parts[0]), int(parts[1]))

    @property
    def size(self) -> int:
        return self.n * self.m

    def __str__(self) -> str:
        return f"{{{self.n},{self.m}}}"


class ResourceFamily(enum.Enum):
    FOUR_STAR = "4star"
    SIX_RING = "6ring"
    EIGHT_LD = "8ld"
    BELL_PAIR = "bell"

    @property
    def base_size(self) -> int:
        return {"4star": 4, "6ring": 6, "8ld": 8, "bell": 2}[self.value]

    @classmethod
    def parse(cls, name: str) -> "ResourceFamily":
        key = name.lower().replace("-", "").replace("_", "").replace(" ", "")
        aliases = {"4star": "4star", "fourstar": "4star", "star": "4star",
                   "6ring": "6ring", "sixring": "6ring", "ring": "6ring",
                   "8ld": "8ld", "eightld": "8ld", "8loopydiamond": "8ld",
                   "bell": "bell", "bellpair": "bell", "bp": "bell"}
        if key not in aliases:
            raise ValueError(f"unknown resource family {name!r}")
        return cls(aliases[key])


# Assumed 8-LD layout: two adjacent hubs with three leaves each. The source
# gives no edge list, only that the state is tree-like; every 8-vertex tree
# has the same 3GHZ cost under the costing model, so this only matters for
# users who also care about the graph itself (override with an edge list).
EIGHT_LD_DEFAULT_EDGES = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7))


def build_base_state(family: ResourceFamily, edges=None) -> GraphState:
    size = family.base_size
    if edges is not None:
        state = GraphState.from_edges(size, edges)
        if not state.is_connected():
            raise ValueError("override edge list must give a connected graph")
        return state
    if family is ResourceFamily.FOUR_STAR:
        return GraphState.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    if family is ResourceFamily.SIX_RING:
        return GraphState.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    if family is ResourceFamily.BELL_PAIR:
        return GraphState.from_edges(2, [(0, 1)])
    return GraphState.from_edges(8, EIGHT_LD_DEFAULT_EDGES)


def graph_to_tableau(state: GraphState) -> StabilizerTableau:
    n = state.num_qubits
    return StabilizerTableau(n, np.eye(n, dtype=np.uint8), state.adjacency())


def encoded_qubit(v: int, block: int, pos: int, code: ShorCode) -> int:
    return v * code.size + block * code.m + pos


def encoded_tableau(state: GraphState, code: ShorCode, swap_roles: bool = False) -> StabilizerTableau:
    """Stabilizers of ``state`` with every qubit concatenated into ``code``.

    Default roles: logical X is X on every qubit of one block, logical Z is Z on
    one qubit of every block. ``swap_roles`` exchanges X and Z throughout.
    """
    n, m = code.n, code.m
    nq = state.num_qubits * code.size
    xs, zs = [], []

    def blank():
        return np.zeros(nq, dtype=np.uint8), np.zeros(nq, dtype=np.uint8)

    def logical_x(v, x, z):
        for j in range(m):
            x[encoded_qubit(v, 0, j, code)] ^= 1

    def logical_z(v, x, z):
        for i in range(n):
            z[encoded_qubit(v, i, 0, code)] ^= 1

    for v in range(state.num_qubits):
        x, z = blank()
        logical_x(v, x, z)
        for u in state.neighbors(v):
            logical_z(u, x, z)
        xs.append(x)
        zs.append(z)
        for i in range(n):
            for j in range(m - 1):
                x, z = blank()
                z[encoded_qubit(v, i, j, code)] = z[encoded_qubit(v, i, j + 1, code)] = 1
                xs.append(x)
                zs.append(z)
        for i in range(n - 1):
            x, z = blank()
            for j in range(m):
                x[encoded_qubit(v, i, j, code)] = x[encoded_qubit(v, i + 1, j, code)] = 1
            xs.append(x)
            zs.append(z)
    x, z = np.array(xs, dtype=np.uint8), np.array(zs, dtype=np.uint8)
    if swap_roles:
        x, z = z, x
    return StabilizerTableau(nq, x, z)


def tableau_to_graph(tab: StabilizerTableau) -> GraphState:
    adj, _, _ = to_graph_form(tab)
    return GraphState.from_adjacency(adj)


def apply_shor_encoding(state: GraphState, code: ShorCode, swap_roles: bool = False) -> GraphState:
    """Concatenate every qubit of ``state`` into ``code`` and return the graph form."""
    if not isinstance(code, ShorCode):
        code = ShorCode(*code)
    return tableau_to_graph(encoded_tableau(state, code, swap_roles))


def photon_count(family: ResourceFamily, code: ShorCode, photons_per_qubit: int = 1) -> int:
    if photons_per_qubit not in (1, 2):
        raise ValueError("photons_per_qubit must be 1 or 2")
    return family.base_size * code.n * code.m * photons_per_qubit


def lc_equivalent_states(a: GraphState, b: GraphState) -> bool:
    """Local-Clifford equivalence with qubit labels held fixed."""
    if a.num_qubits != b.num_qubits:
        return False
    return lc_equivalent(a.adjacency(), b.adjacency())


def lc_isomorphic(a: GraphState, b: GraphState, max_orbit: int = 20000) -> bool:
    """Equivalence up to local Cliffords and relabelling, for small states.

    Explores the local-complementation orbit of ``b`` and tests each member for
    graph isomorphism with ``a`` (WL hashes prune the isomorphism calls).
    """
    if a.num_qubits != b.num_qubits or len(a.edges) == 0 and len(b.edges) == 0:
        return a.num_qubits == b.num_qubits
    ga = a.to_networkx()
    ha = nx.weisfeiler_lehman_graph_hash(ga)
    for member in lc_orbit(b, max_orbit):
        gm = member.to_networkx()
        if nx.weisfeiler_lehman_graph_hash(gm) == ha and nx.is_isomorphic(ga, gm):
            return True
    return False


def lc_orbit(state: GraphState, limit: int = 20000) -> list[GraphState]:
    """Labelled graphs reachable by local complementations (breadth first)."""
    from .stabilizer import local_complement
    start = state.adjacency()
    seen = {start.tobytes(): start}
    frontier = [start]
    while frontier and len(seen) < limit:
        nxt = []
        for adj in frontier:
            for v in range(adj.shape[0]):
                new = local_complement(adj, v)
                key = new.tobytes()
                if key not in seen:
                    seen[key] = new
                    nxt.append(new)
        frontier = nxt
    return [GraphState.from_adjacency(a) for a in seen.values()]
