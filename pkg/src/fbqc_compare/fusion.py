"""Lossy linear-optical fusions and transversal fusions of {n,m}-encoded qubits.

Physical fusion ``(i, j)`` joins qubit ``(i, j)`` of one encoded qubit with
qubit ``(i, j)`` of the other. With the default roles, encoded XX needs every
XX outcome of one block and encoded ZZ needs one ZZ outcome from each block.
``swap_roles`` exchanges the two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .graphs import ShorCode

XX, ZZ = "XX", "ZZ"
BOTH, XX_ONLY, ZZ_ONLY, NEITHER = 0, 1, 2, 3
OUTCOME_NAMES = ("both", "XX_only", "ZZ_only", "neither")


def _exact(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    return Fraction(str(v))


@dataclass(frozen=True)
class PhysicalFusionModel:
    eta: float
    photons_per_qubit: int = 1
    boosted: bool = False

    def __post_init__(self):
        if not 0 <= float(self.eta) <= 1:
            raise ValueError(f"loss per photon must lie in [0, 1], got {self.eta}")
        if self.photons_per_qubit not in (1, 2):
            raise ValueError("photons_per_qubit must be 1 or 2")

    @property
    def photons_per_fusion(self) -> int:
        return 2 * self.photons_per_qubit * (2 if self.boosted else 1)

    def p_success(self, exact: bool = False):
        p = Fraction(3, 4) if self.boosted else Fraction(1, 2)
        return p if exact else float(p)

    def erasure(self, exact: bool = False):
        keep = 1 - (_exact(self.eta) if exact else float(self.eta))
        return 1 - keep ** self.photons_per_fusion

    def single_survival(self, exact: bool = False):
        """Chance that a single-qubit measurement sees all of the qubit's photons."""
        keep = 1 - (_exact(self.eta) if exact else float(self.eta))
        return keep ** self.photons_per_qubit


# -- strategies ------------------------------------------------------------

@dataclass(frozen=True)
class RandomizedFailure:
    name: str = field(default="randomized", init=False)


@dataclass(frozen=True)
class StaticBias:
    """Failure basis per physical fusion, listed block by block."""

    assignment: tuple
    name: str = field(default="static", init=False)

    def __post_init__(self):
        bad = [b for b in self.assignment if b not in (XX, ZZ)]
        if bad:
            raise ValueError(f"failure bases must be XX or ZZ, got {bad}")

    @classmethod
    def default(cls, code: ShorCode) -> "StaticBias":
        """ZZ at the first position of each block, XX elsewhere."""
        return cls(tuple(ZZ if j == 0 else XX for _ in range(code.n) for j in range(code.m)))

    @classmethod
    def parse(cls, text: str) -> "StaticBias":
        return cls(tuple(t.strip().upper() for t in text.split(",") if t.strip()))

    def check(self, code: ShorCode):
        if len(self.assignment) != code.size:
            raise ValueError(f"static assignment covers {len(self.assignment)} fusions, code has {code.size}")


@dataclass(frozen=True)
class LocalAdaptive:
    """Feed-forward over the physical fusions of one encoded fusion."""

    name: str = field(default="adaptive", init=False)


def parse_strategy(name: str, code: ShorCode | None = None, assignment: str | None = None):
    key = name.lower().replace("-", "").replace("_", "")
    if key in ("randomized", "random", "randomizedfailure"):
        return RandomizedFailure()
    if key in ("static", "staticbias"):
        if assignment:
            return StaticBias.parse(assignment)
        if code is None:
            raise ValueError("static strategy needs a code or an assignment")
        return StaticBias.default(code)
    if key in ("adaptive", "localadaptive"):
        return LocalAdaptive()
    raise ValueError(f"unknown strategy {name!r}")


# -- outcome distribution --------------------------------------------------

@dataclass(frozen=True)
class FusionOutcomeDist:
    both: object
    xx_only: object
    zz_only: object
    neither: object

    def __post_init__(self):
        vals = self.as_tuple()
        if any(v < 0 or v > 1 for v in vals):
            raise ValueError(f"probabilities out of range: {vals}")
        total = sum(vals)
        if isinstance(total, Fraction):
            if total != 1:
                raise ValueError(f"probabilities sum to {total}")
        elif abs(total - 1) > 1e-12:
            raise ValueError(f"probabilities sum to {total}")

    def as_tuple(self) -> tuple:
        return (self.both, self.xx_only, self.zz_only, self.neither)

    @property
    def p_xx(self):
        return self.both + self.xx_only

    @property
    def p_zz(self):
        return self.both + self.zz_only

    def to_float(self) -> "FusionOutcomeDist":
        return FusionOutcomeDist(*(float(v) for v in self.as_tuple()))

    def swapped(self) -> "FusionOutcomeDist":
        return FusionOutcomeDist(self.both, self.zz_only, self.xx_only, self.neither)

    def as_dict(self) -> dict:
        return dict(zip(OUTCOME_NAMES, (float(v) for v in self.as_tuple())))


def _from_marginals(both, p_xx, p_zz) -> FusionOutcomeDist:
    vals = (both, p_xx - both, p_zz - both, 1 - p_xx - p_zz + both)
    if not isinstance(both, Fraction):
        # float cancellation can leave values a few ulps below zero
        vals = tuple(min(max(v, 0.0), 1.0) if abs(v) < 1e-12 or abs(v - 1) < 1e-12 else v for v in vals)
    return FusionOutcomeDist(*vals)


# -- single physical fusion --------------------------------------------------

def physical_fusion_outcome(model: PhysicalFusionModel, failure_basis: str, rng: np.random.Generator) -> str:
    """``"both"``, ``"basis_only"`` (the failure basis survives) or ``"erased"``."""
    if failure_basis not in (XX, ZZ):
        raise ValueError("failure basis must be XX or ZZ")
    u = rng.random()
    e = model.erasure()
    if u < e:
        return "erased"
    if u < e + (1 - e) * model.p_success():
        return "both"
    return "basis_only"


def single_qubit_measurement(model: PhysicalFusionModel, rng: np.random.Generator) -> bool:
    """True if a single-qubit measurement returns an outcome."""
    return bool(rng.random() < model.single_survival())


def _fusion_probs(model: PhysicalFusionModel, exact: bool):
    e = model.erasure(exact)
    p = model.p_success(exact)
    return (1 - e) * p, (1 - e) * (1 - p), e


# -- closed form for non-adaptive strategies --------------------------------

def _bases(code: ShorCode, strategy):
    if isinstance(strategy, StaticBias):
        strategy.check(code)
        return list(strategy.assignment)
    return [None] * code.size


def _closed_form(code: ShorCode, strategy, model: PhysicalFusionModel, swap_roles: bool, exact: bool):
    s, f, e = _fusion_probs(model, exact)
    half = Fraction(1, 2) if exact else 0.5
    bases = _bases(code, strategy)
    if swap_roles:
        bases = [None if b is None else (ZZ if b == XX else XX) for b in bases]
    one = Fraction(1) if exact else 1.0
    all_v = one       # P(every block has a ZZ)
    none_u = one      # P(no block is all XX)
    v_not_u = one     # P(every block has a ZZ and is not all XX)
    for i in range(code.n):
        p_all_xx = one
        p_all_xx_no_zz = one
        p_no_zz = one
        for j in range(code.m):
            b = bases[i * code.m + j]
            if b is None:
                px_only, pz_only = f * half, f * half
            elif b == XX:
                px_only, pz_only = f, 0 * f
            else:
                px_only, pz_only = 0 * f, f
            p_all_xx *= s + px_only
            p_all_xx_no_zz *= px_only
            p_no_zz *= px_only + e
        pu = p_all_xx
        pv = 1 - p_no_zz
        puv = p_all_xx - p_all_xx_no_zz
        all_v *= pv
        none_u *= 1 - pu
        v_not_u *= pv - puv
    p_xx = 1 - none_u
    p_zz = all_v
    both = all_v - v_not_u
    dist = _from_marginals(both, p_xx, p_zz)
    return dist.swapped() if swap_roles else dist


# -- adaptive policy ---------------------------------------------------------

class AdaptivePolicy:
    """Optimal feed-forward over the physical fusions of one encoded fusion.

    Fusions run block by block. Before each one the failure basis is chosen to
    maximise the chance of recovering both encoded outcomes, then their sum.
    Once encoded XX is in hand (or encoded ZZ is lost) the remaining qubits are
    measured singly in the basis the other outcome needs. Roles are those of
    the default orientation; callers swap for the other.
    """

    def __init__(self, code: ShorCode, model: PhysicalFusionModel, exact: bool = False):
        self.code, self.model, self.exact = code, model, exact
        self.s, self.f, self.e = _fusion_probs(model, exact)
        a = model.single_survival(exact)
        self.a = a          # one side of a single Z measurement survives
        self.c = a * a      # both sides of a single X pair survive
        self.one = Fraction(1) if exact else 1.0
        self.zero = self.one * 0
        self._memo: dict = {}
        self.choice: dict = {}

    def _zz_by_singles(self, r: int):
        miss = (1 - self.a) ** r
        return (1 - miss) ** 2

    def terminal(self, t: int, X: bool, Zok: bool, cx: bool, cz: bool):
        """(both, xx, zz) when nothing is left to decide, else None."""
        n, m = self.code.n, self.code.m
        i, j = divmod(t, m)
        if t == n * m:
            return (self.one if X and Zok else self.zero, self.one if X else self.zero,
                    self.one if Zok else self.zero)
        r = m - j
        future = n - i - 1
        if X and Zok:
            pz = (self.one if cz else self._zz_by_singles(r)) * self._zz_by_singles(m) ** future
            return (pz, self.one, pz)
        if not Zok:
            if X:
                return (self.zero, self.one, self.zero)
            # X singles: one fully seen block on each side, not necessarily the same block
            full = n - i if j == 0 else future
            cur = self.c ** r if cx and j else self.zero
            side = 1 - (1 - self.a ** m) ** full
            px = 1 - (1 - cur) * (1 - side * side)
            return (self.zero, px, self.zero)
        return None

    def value(self, t: int = 0, X: bool = False, Zok: bool = True, cx: bool = True, cz: bool = False):
        key = (t, X, Zok, cx, cz)
        if key in self._memo:
            return self._memo[key]
        term = self.terminal(t, X, Zok, cx, cz)
        if term is not None:
            self._memo[key] = term
            return term
        best, best_b = None, None
        for b in (ZZ, XX):
            acc = [self.zero] * 3
            for p, (nx_, nz) in self._branches(b, cx, cz):
                sub = self.value(*self.advance(t, X, Zok, nx_, nz))
                for k in range(3):
                    acc[k] += p * sub[k]
            cand = tuple(acc)
            if best is None or (cand[0], cand[1] + cand[2]) > (best[0], best[1] + best[2]):
                best, best_b = cand, b
        self._memo[key] = best
        self.choice[key] = best_b
        return best

    def _branches(self, b: str, cx: bool, cz: bool):
        yield self.s, (cx, True)
        if b == XX:
            yield self.f, (cx, cz)
        else:
            yield self.f, (False, True)
        yield self.e, (False, cz)

    def advance(self, t: int, X: bool, Zok: bool, cx: bool, cz: bool):
        t += 1
        if t % self.code.m == 0:
            return t, X or cx, Zok and cz, True, False
        return t, X, Zok, cx, cz

    def basis(self, t, X, Zok, cx, cz) -> str:
        self.value(t, X, Zok, cx, cz)
        return self.choice[(t, X, Zok, cx, cz)]

    def dist(self) -> FusionOutcomeDist:
        both, px, pz = self.value()
        return _from_marginals(both, px, pz)


@lru_cache(maxsize=256)
def _policy(code: ShorCode, model: PhysicalFusionModel, exact: bool) -> AdaptivePolicy:
    pol = AdaptivePolicy(code, model, exact)
    pol.value()
    return pol


def encoded_fusion_dist(code: ShorCode, strategy, model: PhysicalFusionModel,
                        swap_roles: bool = False, exact: bool = False) -> FusionOutcomeDist:
    """Outcome distribution of one encoded fusion, for any code size."""
    if isinstance(strategy, LocalAdaptive):
        dist = _policy(code, model, exact).dist()
        return dist.swapped() if swap_roles else dist
    return _closed_form(code, strategy, model, swap_roles, exact)


# -- symplectic recovery check ------------------------------------------------

def pauli_to_int(p: str) -> int:
    """Pauli string such as ``"XZIY"`` as bits: X on bit q, Z on bit len+q."""
    n = len(p)
    v = 0
    for q, ch in enumerate(p.upper()):
        if ch in "XY":
            v |= 1 << q
        if ch in "ZY":
            v |= 1 << (n + q)
        if ch not in "IXYZ":
            raise ValueError(f"bad Pauli letter {ch!r}")
    return v


def _support(v: int, nq: int) -> set:
    mask = (1 << nq) - 1
    bits = (v & mask) | (v >> nq)
    return {q for q in range(nq) if bits >> q & 1}


def recoverable(logical_op, measured_ops, lost_qubits=(), stabilizers=(), num_qubits: int | None = None) -> bool:
    """Whether ``logical_op`` is fixed by the measured operators, up to stabilizers.

    Operators are Pauli strings or bit-packed ints (then ``num_qubits`` is
    needed). Measured operators touching a lost qubit are discarded.
    Stabilizer values are known from preparation, so any stabilizer may be
    multiplied in.
    """
    ops = [logical_op, *measured_ops, *stabilizers]
    if num_qubits is None:
        strs = [o for o in ops if isinstance(o, str)]
        if not strs:
            raise ValueError("num_qubits needed for int-encoded operators")
        num_qubits = len(strs[0])
    conv = [pauli_to_int(o) if isinstance(o, str) else int(o) for o in ops]
    target, meas, stabs = conv[0], conv[1:1 + len(measured_ops)], conv[1 + len(measured_ops):]
    lost = set(lost_qubits)
    basis: dict = {}

    def reduce(v):
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                return v
            v ^= basis[top]
        return 0

    for v in [m for m in meas if not (_support(m, num_qubits) & lost)] + stabs:
        v = reduce(v)
        if v:
            basis[v.bit_length() - 1] = v
    return reduce(target) == 0


class _EncodedPair:
    """Operators on the 2nm qubits taking part in one encoded fusion."""

    def __init__(self, code: ShorCode, swap_roles: bool):
        self.code = code
        self.nq = 2 * code.size
        self.swap = swap_roles

    def q(self, side: int, i: int, j: int) -> int:
        return side * self.code.size + i * self.code.m + j

    def op(self, xs=(), zs=()) -> int:
        v = 0
        for q in xs:
            v ^= 1 << q
        for q in zs:
            v ^= 1 << (self.nq + q)
        if self.swap:
            lo, hi = v & ((1 << self.nq) - 1), v >> self.nq
            v = hi | (lo << self.nq)
        return v

    def pair(self, kind: str, i: int, j: int) -> int:
        qs = (self.q(0, i, j), self.q(1, i, j))
        return self.op(xs=qs) if kind == "X" else self.op(zs=qs)

    def physical(self, basis: str, i: int, j: int) -> int:
        """Fusion outcome operator. Physical bases do not swap with the code roles."""
        qs = (self.q(0, i, j), self.q(1, i, j))
        v = 0
        for q in qs:
            v ^= 1 << (q if basis == XX else self.nq + q)
        return v

    def single(self, basis: str, side: int, i: int, j: int) -> int:
        q = self.q(side, i, j)
        return 1 << (q if basis == "X" else self.nq + q)

    def _block_x(self) -> int:
        return self.op(xs=[self.q(s, 0, j) for s in (0, 1) for j in range(self.code.m)])

    def _spread_z(self) -> int:
        return self.op(zs=[self.q(s, i, 0) for s in (0, 1) for i in range(self.code.n)])

    # with swapped roles the code is Hadamard-conjugated, logical labels kept
    def logical_xx(self) -> int:
        return self._spread_z() if self.swap else self._block_x()

    def logical_zz(self) -> int:
        return self._block_x() if self.swap else self._spread_z()

    def stabilizers(self) -> list:
        n, m = self.code.n, self.code.m
        out = []
        for s in (0, 1):
            for i in range(n):
                for j in range(m - 1):
                    out.append(self.op(zs=[self.q(s, i, j), self.q(s, i, j + 1)]))
            for i in range(n - 1):
                out.append(self.op(xs=[self.q(s, i, j) for j in range(m)] +
                                   [self.q(s, i + 1, j) for j in range(m)]))
        return out


EXACT_LIMIT = 10


def exact_encoded_fusion_dist(code: ShorCode, strategy, model: PhysicalFusionModel,
                              swap_roles: bool = False) -> FusionOutcomeDist:
    """Exact rational distribution by enumerating every outcome pattern.

    Each pattern is scored with ``recoverable``; nothing is shared with the
    closed forms used elsewhere.
    """
    if code.size > EXACT_LIMIT:
        raise ValueError(f"exact enumeration supports n*m <= {EXACT_LIMIT}, got {code.size}")
    s, f, e = _fusion_probs(model, exact=True)
    a = model.single_survival(exact=True)
    ops = _EncodedPair(code, swap_roles)
    stabs = ops.stabilizers()
    lxx, lzz = ops.logical_xx(), ops.logical_zz()
    n, m = code.n, code.m
    acc = [Fraction(0)] * 4

    def score(measured, prob):
        rx = recoverable(lxx, measured, (), stabs, ops.nq)
        rz = recoverable(lzz, measured, (), stabs, ops.nq)
        acc[(0 if rz else 1) if rx else (2 if rz else 3)] += prob

    if not isinstance(strategy, LocalAdaptive):
        bases = _bases(code, strategy)
        per = []
        for t in range(code.size):
            i, j = divmod(t, m)
            opts = []
            for b in ([bases[t]] if bases[t] else [XX, ZZ]):
                w = Fraction(1) if bases[t] else Fraction(1, 2)
                opts.append((w * s, [ops.physical(XX, i, j), ops.physical(ZZ, i, j)]))
                opts.append((w * f, [ops.physical(b, i, j)]))
                opts.append((w * e, []))
            per.append(opts)
        for combo in itertools.product(*per):
            prob = Fraction(1)
            measured = []
            for p, mops in combo:
                prob *= p
                measured.extend(mops)
            if prob:
                score(measured, prob)
        return FusionOutcomeDist(*acc)

    # adaptive: walk the policy tree; roles inside the policy are the default
    # ones, so physical bases are mirrored when the code roles are swapped
    pol = _policy(code, model, True)
    flip = {XX: ZZ, ZZ: XX}

    def phys(b):
        return flip[b] if swap_roles else b

    def step(t, X, Zok, cx, cz, sa, sb):
        nxt = pol.advance(t, X, Zok, cx, cz)
        return nxt + ((False, False) if nxt[0] % m == 0 else (sa, sb))

    def walk(t, X, Zok, cx, cz, sa, sb, measured, prob):
        if prob == 0:
            return
        if t == code.size:
            score(measured, prob)
            return
        i, j = divmod(t, m)
        if X and Zok:
            # singles for encoded ZZ: one Z on each side of the block suffices
            zb = phys(ZZ)[0]
            for ra, rb in itertools.product((True, False), repeat=2):
                p = (a if ra else 1 - a) * (a if rb else 1 - a)
                extra = ([ops.single(zb, 0, i, j)] if ra else []) + ([ops.single(zb, 1, i, j)] if rb else [])
                na, nb = sa or ra, sb or rb
                walk(*step(t, X, Zok, cx, cz or (na and nb), na, nb), measured + extra, prob * p)
            return
        if not Zok:
            if X:
                walk(*step(t, X, Zok, cx, cz, sa, sb), measured, prob)
                return
            xb = phys(XX)[0]
            for ra, rb in itertools.product((True, False), repeat=2):
                p = (a if ra else 1 - a) * (a if rb else 1 - a)
                extra = ([ops.single(xb, 0, i, j)] if ra else []) + ([ops.single(xb, 1, i, j)] if rb else [])
                walk(*step(t, X, Zok, cx and ra and rb, cz, sa, sb), measured + extra, prob * p)
            return
        b = pol.basis(t, X, Zok, cx, cz)
        both = [ops.physical(phys(XX), i, j), ops.physical(phys(ZZ), i, j)]
        for p, (nx_, nz), mops in zip((s, f, e), [(cx, True), (cx, cz) if b == XX else (False, True), (False, cz)],
                                      (both, [ops.physical(phys(b), i, j)], [])):
            walk(*step(t, X, Zok, nx_, nz, sa, sb), measured + mops, prob * p)

    walk(0, False, True, True, False, False, False, [], Fraction(1))
    return FusionOutcomeDist(*acc)


# -- Monte Carlo ---------------------------------------------------------------

def sample_encoded_fusion(code: ShorCode, strategy, model: PhysicalFusionModel,
                          rng: np.random.Generator, size: int | None = None,
                          swap_roles: bool = False):
    """Draw outcomes (``BOTH``, ``XX_ONLY``, ``ZZ_ONLY``, ``NEITHER``) at the physical level."""
    k = 1 if size is None else int(size)
    s, f, e = _fusion_probs(model, exact=False)
    n, m = code.n, code.m
    if isinstance(strategy, LocalAdaptive):
        out = _sample_adaptive(code, model, rng, k)
    else:
        bases = _bases(code, strategy)
        if swap_roles:
            bases = [None if b is None else (ZZ if b == XX else XX) for b in bases]
        u = rng.random((k, code.size))
        ok = u >= e
        both = u >= e + f
        coin = rng.random((k, code.size)) < 0.5
        is_xx = np.array([b == XX for b in bases])
        rand = np.array([b is None for b in bases])
        fail_xx = np.where(rand, coin, is_xx)
        xknown = (both | (ok & fail_xx)).reshape(k, n, m)
        zknown = (both | (ok & ~fail_xx)).reshape(k, n, m)
        rx = xknown.all(axis=2).any(axis=1)
        rz = zknown.any(axis=2).all(axis=1)
        out = np.where(rx, np.where(rz, BOTH, XX_ONLY), np.where(rz, ZZ_ONLY, NEITHER))
        if swap_roles:
            out = _swap_codes(out)
        return out[0] if size is None else out
    if swap_roles:
        out = _swap_codes(out)
    return out[0] if size is None else out


def _swap_codes(out: np.ndarray) -> np.ndarray:
    return np.choose(out, [BOTH, ZZ_ONLY, XX_ONLY, NEITHER])


def _sample_adaptive(code: ShorCode, model: PhysicalFusionModel, rng: np.random.Generator, k: int) -> np.ndarray:
    pol = _policy(code, model, False)
    s, f, e = _fusion_probs(model, exact=False)
    a = model.single_survival()
    n, m = code.n, code.m
    X = np.zeros(k, bool)
    Zok = np.ones(k, bool)
    cx = np.ones(k, bool)
    cz = np.zeros(k, bool)
    sa = np.zeros(k, bool)
    sb = np.zeros(k, bool)
    ca = np.ones(k, bool)
    cb = np.ones(k, bool)
    any_a = np.zeros(k, bool)
    any_b = np.zeros(k, bool)
    for t in range(code.size):
        # table of chosen bases indexed by the four flags
        table = np.zeros(16, bool)
        for idx in range(16):
            fl = tuple(bool(idx >> b & 1) for b in range(4))
            if pol.terminal(t, *fl) is None:
                table[idx] = pol.basis(t, *fl) == XX
        idx = X.astype(int) | Zok.astype(int) << 1 | cx.astype(int) << 2 | cz.astype(int) << 3
        fusing = ~X & Zok
        zsingle = X & Zok
        xsingle = ~X & ~Zok
        u = rng.random(k)
        ok = u >= e
        both = u >= e + f
        fail_xx = table[idx]
        # fusion mode
        new_cx = np.where(fusing, cx & (both | (ok & fail_xx)), cx)
        new_cz = np.where(fusing, cz | both | (ok & ~fail_xx), cz)
        # single-qubit modes
        ra, rb = rng.random(k) < a, rng.random(k) < a
        sa = np.where(zsingle, sa | ra, sa)
        sb = np.where(zsingle, sb | rb, sb)
        new_cx = np.where(xsingle, cx & ra & rb, new_cx)
        ca = np.where(xsingle, ca & ra, ca)
        cb = np.where(xsingle, cb & rb, cb)
        cx, cz = new_cx, new_cz
        if (t + 1) % m == 0:
            any_a |= xsingle & ca
            any_b |= xsingle & cb
            ca = np.ones(k, bool)
            cb = np.ones(k, bool)
            X = X | cx
            Zok = Zok & (cz | (sa & sb))
            cx = np.ones(k, bool)
            cz = np.zeros(k, bool)
            sa = np.zeros(k, bool)
            sb = np.zeros(k, bool)
    X = X | (any_a & any_b)
    return np.where(X, np.where(Zok, BOTH, XX_ONLY), np.where(Zok, ZZ_ONLY, NEITHER))
