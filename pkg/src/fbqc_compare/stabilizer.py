"""Binary symplectic tools for stabilizer states.

Paulis are stored as pairs of GF(2) vectors ``(x, z)``; ``Y`` is ``x = z = 1``.
Signs are tracked only where they are cheap to track. Every operation that
matters here (graph-form reduction, fusion, local-Clifford equivalence) is
insensitive to the Pauli frame, so the group structure is what counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

_PAULI_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_PAULI = {v: k for k, v in _PAULI_BITS.items()}


# --------------------------------------------------------------------------
# GF(2) linear algebra
# --------------------------------------------------------------------------

def gf2_rref(mat: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2). Returns (matrix, pivot columns)."""
    m = np.array(mat, dtype=bool, copy=True)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.flatnonzero(m[r:, c])
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        mask = m[:, c].copy()
        mask[r] = False
        if mask.any():
            m[mask] ^= m[r]
        pivots.append(c)
        r += 1
    return m[:r].astype(np.uint8), pivots


def gf2_rank(mat: np.ndarray) -> int:
    if np.size(mat) == 0:
        return 0
    return len(gf2_rref(mat)[1])


def gf2_nullspace(mat: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the right null space of ``mat`` over GF(2)."""
    mat = np.asarray(mat, dtype=np.uint8)
    cols = mat.shape[1]
    if mat.shape[0] == 0:
        return np.eye(cols, dtype=np.uint8)
    red, pivots = gf2_rref(mat)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(pivots):
            basis[i, p] = red[r, f]
    return basis


def gf2_in_rowspace(rows: np.ndarray, vec: np.ndarray) -> bool:
    rows = np.asarray(rows, dtype=np.uint8)
    if rows.shape[0] == 0:
        return not np.any(vec)
    return gf2_rank(np.vstack([rows, vec])) == gf2_rank(rows)


def symplectic_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Commutation matrix of symplectic rows ``[x | z]`` (1 = anticommute)."""
    a = np.atleast_2d(a).astype(np.int64)
    b = np.atleast_2d(b).astype(np.int64)
    n = a.shape[1] // 2
    return ((a[:, :n] @ b[:, n:].T + a[:, n:] @ b[:, :n].T) % 2).astype(np.uint8)


# --------------------------------------------------------------------------
# Tableau
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilizerTableau:
    """Generators of a stabilizer group, one row per generator."""

    num_qubits: int
    x: np.ndarray
    z: np.ndarray
    signs: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.uint8).reshape(-1, self.num_qubits)
        z = np.asarray(self.z, dtype=np.uint8).reshape(-1, self.num_qubits)
        if x.shape != z.shape:
            raise ValueError("x and z parts differ in shape")
        signs = (np.zeros(x.shape[0], dtype=np.uint8) if self.signs is None
                 else np.asarray(self.signs, dtype=np.uint8))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def from_strings(cls, paulis: list[str]) -> "StabilizerTableau":
        signs, rows = [], []
        for p in paulis:
            sign = 0
            if p[0] in "+-":
                sign, p = int(p[0] == "-"), p[1:]
            signs.append(sign)
            rows.append(p)
        n = len(rows[0]) if rows else 0
        x = np.array([[_PAULI_BITS[c][0] for c in r] for r in rows], dtype=np.uint8).reshape(-1, n)
        z = np.array([[_PAULI_BITS[c][1] for c in r] for r in rows], dtype=np.uint8).reshape(-1, n)
        return cls(n, x, z, np.array(signs, dtype=np.uint8))

    @property
    def num_generators(self) -> int:
        return self.x.shape[0]

    @property
    def symplectic(self) -> np.ndarray:
        return np.hstack([self.x, self.z])

    def paulis(self) -> list[str]:
        out = []
        for row in range(self.num_generators):
            s = "".join(_BITS_PAULI[(int(a), int(b))] for a, b in zip(self.x[row], self.z[row]))
            out.append(("-" if self.signs[row] else "+") + s)
        return out

    def commutes(self) -> bool:
        comm = symplectic_product(self.symplectic, self.symplectic)
        return not comm.any()

    def is_independent(self) -> bool:
        return gf2_rank(self.symplectic) == self.num_generators

    def is_state(self) -> bool:
        return (self.num_generators == self.num_qubits and self.commutes()
                and self.is_independent())

    def same_group(self, other: "StabilizerTableau") -> bool:
        """Equality of the unsigned stabilizer groups."""
        if self.num_qubits != other.num_qubits:
            return False
        a, b = self.symplectic, other.symplectic
        ra = gf2_rank(a)
        return ra == gf2_rank(b) == gf2_rank(np.vstack([a, b]))

    def contains(self, x: np.ndarray, z: np.ndarray) -> bool:
        return gf2_in_rowspace(self.symplectic, np.concatenate([x, z]).astype(np.uint8))

    def permuted(self, order: list[int]) -> "StabilizerTableau":
        """Reorder columns so that new qubit ``i`` is old qubit ``order[i]``."""
        return StabilizerTableau(len(order), self.x[:, order], self.z[:, order], self.signs)


def tensor(*tabs: StabilizerTableau) -> StabilizerTableau:
    n = sum(t.num_qubits for t in tabs)
    k = sum(t.num_generators for t in tabs)
    x = np.zeros((k, n), dtype=np.uint8)
    z = np.zeros((k, n), dtype=np.uint8)
    r = c = 0
    for t in tabs:
        x[r:r + t.num_generators, c:c + t.num_qubits] = t.x
        z[r:r + t.num_generators, c:c + t.num_qubits] = t.z
        r += t.num_generators
        c += t.num_qubits
    return StabilizerTableau(n, x, z, np.concatenate([t.signs for t in tabs]))


def ghz_tableau(n: int) -> StabilizerTableau:
    x = np.zeros((n, n), dtype=np.uint8)
    z = np.zeros((n, n), dtype=np.uint8)
    x[0] = 1
    for i in range(n - 1):
        z[i + 1, i] = z[i + 1, i + 1] = 1
    return StabilizerTableau(n, x, z)


def apply_hadamard(tab: StabilizerTableau, qubits) -> StabilizerTableau:
    x, z = tab.x.copy(), tab.z.copy()
    q = list(qubits)
    x[:, q], z[:, q] = tab.z[:, q], tab.x[:, q]
    return StabilizerTableau(tab.num_qubits, x, z, tab.signs)


def bell_fuse(tab: StabilizerTableau, a: int, b: int) -> StabilizerTableau:
    """Project qubits ``a, b`` onto the Bell pair stabilized by XX and ZZ, then drop them.

    This is the success branch of a type-II fusion, up to Pauli corrections.
    """
    n = tab.num_qubits
    xx = np.zeros(2 * n, dtype=np.uint8)
    xx[[a, b]] = 1
    zz = np.zeros(2 * n, dtype=np.uint8)
    zz[[n + a, n + b]] = 1
    rows = tab.symplectic.copy()
    for probe in (xx, zz):
        anti = symplectic_product(rows, probe)[:, 0].astype(bool)
        idx = np.flatnonzero(anti)
        if idx.size:
            pivot = rows[idx[0]].copy()
            rows[idx[1:]] ^= pivot
            rows = np.delete(rows, idx[0], axis=0)
    # survivors restrict to II, XX, YY or ZZ on (a, b); strip that part
    rows[:, [a, b, n + a, n + b]] = 0
    keep = [q for q in range(n) if q not in (a, b)]
    rows = np.hstack([rows[:, keep], rows[:, [n + q for q in keep]]])
    red, _ = gf2_rref(rows) if rows.shape[0] else (rows, [])
    m = n - 2
    if red.shape[0] != m:
        raise ValueError("fusion did not leave a pure stabilizer state")
    return StabilizerTableau(m, red[:, :m], red[:, m:])


# --------------------------------------------------------------------------
# graph form and local-Clifford equivalence
# --------------------------------------------------------------------------

def to_graph_form(tab: StabilizerTableau) -> tuple[np.ndarray, list[int], list[int]]:
    """Reduce a stabilizer state to graph form by local Cliffords.

    Returns ``(adjacency, hadamard_qubits, phase_qubits)``: applying H to
    ``hadamard_qubits`` and then a phase gate to ``phase_qubits`` maps the
    input onto the graph state with the returned adjacency.
    """
    if not tab.is_state():
        raise ValueError("tableau does not describe a pure stabilizer state")
    n = tab.num_qubits
    sym = tab.symplectic
    red, piv = gf2_rref(sym)
    r = sum(1 for p in piv if p < n)
    # rows whose X part vanished: their Z pivots pick the qubits to Hadamard
    zrows = red[r:, n:]
    _, zpiv = gf2_rref(zrows) if zrows.shape[0] else (zrows, [])
    had = sorted(zpiv)
    cur = apply_hadamard(tab, had) if had else tab
    sym = cur.symplectic
    xpart, zpart = sym[:, :n].astype(np.int64), sym[:, n:].astype(np.int64)
    # invert the X part
    aug = np.hstack([xpart, np.eye(n, dtype=np.int64)]).astype(np.uint8)
    ared, apiv = gf2_rref(aug)
    if apiv[:n] != list(range(n)):
        raise RuntimeError("X part not invertible after Hadamards")
    inv = ared[:, n:].astype(np.int64)
    gamma = (inv @ zpart) % 2
    phase = [i for i in range(n) if gamma[i, i]]
    for i in phase:
        gamma[i, i] = 0
    if not np.array_equal(gamma, gamma.T):
        raise RuntimeError("graph form is not symmetric")
    return gamma.astype(np.uint8), had, phase


def _lc_system(g1: np.ndarray, g2: np.ndarray) -> np.ndarray:
    """Linear constraints on per-qubit Clifford blocks mapping graph g1 onto g2.

    Unknown vector layout: a (n), b (n), c (n), d (n), acting as
    ``x' = a x + b z``, ``z' = c x + d z`` on each qubit.
    """
    n = g1.shape[0]
    g1 = g1.astype(np.int64)
    g2 = g2.astype(np.int64)
    eqs = np.zeros((n * n, 4 * n), dtype=np.uint8)
    # entry (j, k) of  G2 A + G2 B G1 + C + D G1 = 0
    for j in range(n):
        for k in range(n):
            row = eqs[j * n + k]
            row[k] ^= g2[j, k]
            row[n:2 * n] ^= (g2[j, :] * g1[:, k]).astype(np.uint8)
            if j == k:
                row[2 * n + j] ^= 1
            row[3 * n + j] ^= g1[j, k]
    return eqs


def lc_equivalent(g1: np.ndarray, g2: np.ndarray, max_enum_dim: int = 22,
                  rng: np.random.Generator | None = None, samples: int = 200_000) -> bool:
    """Whether two labelled graph states are related by local Cliffords.

    Solves the linear system of Van den Nest et al. and searches its solution
    space for a point satisfying the invertibility constraint on every qubit.
    Exhaustive below ``max_enum_dim`` basis vectors, randomised above.
    """
    g1 = np.asarray(g1, dtype=np.uint8)
    g2 = np.asarray(g2, dtype=np.uint8)
    if g1.shape != g2.shape:
        return False
    n = g1.shape[0]
    if n == 0:
        return True
    basis = gf2_nullspace(_lc_system(g1, g2))
    dim = basis.shape[0]
    if dim == 0:
        return False

    def ok(vecs: np.ndarray) -> np.ndarray:
        a, b, c, d = (vecs[:, i * n:(i + 1) * n] for i in range(4))
        det = (a & d) ^ (b & c)
        return det.all(axis=1)

    if dim <= max_enum_dim:
        chunk = 1 << min(dim, 16)
        coeffs_lo = ((np.arange(chunk)[:, None] >> np.arange(min(dim, 16))) & 1).astype(np.uint8)
        lo = (coeffs_lo.astype(np.int64) @ basis[:min(dim, 16)].astype(np.int64)) % 2
        lo = lo.astype(np.uint8)
        hi_dim = dim - min(dim, 16)
        for hi in itertools.product((0, 1), repeat=hi_dim):
            off = np.zeros(4 * n, dtype=np.uint8)
            for bit, vec in zip(hi, basis[16:]):
                if bit:
                    off ^= vec
            if ok(lo ^ off).any():
                return True
        return False
    rng = rng or np.random.default_rng(0)
    for _ in range(0, samples, 4096):
        coeffs = rng.integers(0, 2, size=(4096, dim), dtype=np.int64)
        vecs = ((coeffs @ basis.astype(np.int64)) % 2).astype(np.uint8)
        if ok(vecs).any():
            return True
    return False


def local_complement(adj: np.ndarray, v: int) -> np.ndarray:
    adj = np.array(adj, dtype=np.uint8, copy=True)
    nb = np.flatnonzero(adj[v])
    if nb.size > 1:
        block = adj[np.ix_(nb, nb)] ^ 1
        np.fill_diagonal(block, 0)
        adj[np.ix_(nb, nb)] = block
    return adj
