"""Loss thresholds from crossing failure-rate curves of two lattice sizes."""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

from ..fusion import BOTH, NEITHER, XX_ONLY, ZZ_ONLY, PhysicalFusionModel, encoded_fusion_dist
from .network import build_network, load_definition, network_from_definition
from .percolation import network_failures


class NoCrossing(RuntimeError):
    pass


@dataclass(frozen=True)
class ThresholdEstimate:
    threshold: float
    ci_low: float
    ci_high: float
    sizes: tuple
    trials: int
    bracket: tuple
    points: tuple = ()          # (eta, L, failures, trials)
    fits: dict = field(default_factory=dict)
    note: str = ""


# outcome order used when turning one uniform into a site outcome
_ORDER = np.array([NEITHER, ZZ_ONLY, XX_ONLY, BOTH], dtype=np.int8)


def fusion_probabilities(code, strategy, template: PhysicalFusionModel, etas, swap_roles: bool = False) -> np.ndarray:
    """Rows of (both, XX only, ZZ only, neither), one per loss value."""
    rows = []
    for eta in etas:
        model = dataclasses.replace(template, eta=float(eta))
        rows.append(encoded_fusion_dist(code, strategy, model, swap_roles).to_float().as_tuple())
    return np.array(rows)


def bond_erasure_probabilities(qs) -> np.ndarray:
    """Control: each primal edge erased independently with probability q, dual untouched."""
    q = np.asarray(qs, dtype=float)
    return np.stack([1 - q, np.zeros_like(q), q, np.zeros_like(q)], axis=1)


@lru_cache(maxsize=16)
def _network(family: str, L: int, path):
    if path is None:
        return build_network(family, L)
    return network_from_definition(load_definition(path=path), L)


def _block_job(args):
    family, path, L, probs, seed, block, count = args
    net = _network(family, L, path)
    rng = np.random.default_rng(np.random.SeedSequence([seed, L, block]))
    # the same uniforms serve every loss value (common random numbers)
    u = rng.random((count, net.num_sites))
    fails = np.zeros(len(probs), dtype=np.int64)
    for k, p in enumerate(probs):
        cum = np.cumsum([p[NEITHER], p[ZZ_ONLY], p[XX_ONLY]])
        out = _ORDER[np.searchsorted(cum, u, side="right")]
        fails[k] = int(network_failures(net, out).sum())
    return fails


def count_failures(family, L: int, probs: np.ndarray, trials: int, seed: int,
                   block: int = 250, workers: int = 1, definition_path=None) -> np.ndarray:
    """Failures out of ``trials`` at each row of ``probs``, for one lattice size."""
    fam = family.value if hasattr(family, "value") else str(family)
    path = str(definition_path) if definition_path else None
    probs = np.asarray(probs, dtype=float)
    jobs = []
    for b in range(math.ceil(trials / block)):
        jobs.append((fam, path, L, probs, seed, b, min(block, trials - b * block)))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_block_job, jobs))
    else:
        parts = [_block_job(j) for j in jobs]
    return np.sum(parts, axis=0)


def fit_logistic(etas, fails, trials, center: float, scale: float) -> tuple[float, float]:
    """Binomial maximum-likelihood fit of logit f = a + b (eta - center) / scale."""
    x = (np.asarray(etas, float) - center) / scale
    k = np.asarray(fails, float)
    n = np.asarray(trials, float)
    frac = np.clip((k + 0.5) / (n + 1), 1e-4, 1 - 1e-4)
    y = np.log(frac / (1 - frac))
    b0, a0 = np.polyfit(x, y, 1) if len(set(x)) > 1 else (0.0, float(y.mean()))

    def nll(theta):
        z = theta[0] + theta[1] * x
        # log(1 + e^z) computed stably
        return float(np.sum(n * np.logaddexp(0, z) - k * z))

    res = minimize(nll, [a0, b0], method="Nelder-Mead", options={"xatol": 1e-9, "fatol": 1e-9, "maxiter": 4000})
    return float(res.x[0]), float(res.x[1])


def _crossing(f1, f2, center, scale):
    (a1, b1), (a2, b2) = f1, f2
    if b1 == b2:
        return None
    return center + scale * (a1 - a2) / (b2 - b1)


def _half_point(curve: dict, trials: int):
    es = sorted(curve)
    rates = [curve[e] / trials for e in es]
    for a, b, ra, rb in zip(es, es[1:], rates, rates[1:]):
        if ra < 0.5 <= rb:
            return a + (b - a) * (0.5 - ra) / (rb - ra)
    return None


def estimate_threshold(family, probability_fn, sizes, trials: int, bracket, seed: int = 0,
                       coarse_points: int = 7, refine_points: int = 7, bootstrap: int = 200,
                       workers: int = 1, definition_path=None, progress=None) -> ThresholdEstimate:
    """Crossing of the two largest sizes' failure curves.

    ``probability_fn(etas)`` returns per-site outcome probabilities, one row
    per loss value. A coarse scan over ``bracket`` locates the crossing, a
    second scan refines around it, and the final fit uses points within a
    quarter of the bracket width of the coarse estimate.
    """
    sizes = tuple(sorted(int(L) for L in sizes))
    if len(sizes) < 2:
        raise ValueError("need at least two lattice sizes")
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValueError("bracket must satisfy lo < hi")
    data: dict = {L: {} for L in sizes}

    def run(etas):
        etas = [e for e in etas if e not in data[sizes[-1]]]
        if not etas:
            return
        probs = probability_fn(np.array(etas))
        for L in sizes:
            fails = count_failures(family, L, probs, trials, seed, workers=workers, definition_path=definition_path)
            for e, f in zip(etas, fails):
                data[L][e] = int(f)
            if progress:
                progress(L, etas, fails)

    coarse = [float(e) for e in np.round(np.linspace(lo, hi, coarse_points), 12)]
    run(coarse)
    big = sizes[-2:]
    all_fail = all(data[L][e] == trials for L in sizes for e in data[L])
    if all_fail:
        pts = tuple((e, L, data[L][e], trials) for L in sizes for e in sorted(data[L]))
        return ThresholdEstimate(lo, lo, lo, sizes, trials, (lo, hi), pts, {}, "failure at every point of the bracket")
    scale = (hi - lo) / 4
    center = (lo + hi) / 2

    def fit(window):
        fits = {}
        for L in big:
            es = [e for e in sorted(data[L]) if window[0] <= e <= window[1]]
            fits[L] = fit_logistic(es, [data[L][e] for e in es], [trials] * len(es), center, scale)
        return fits

    fits = fit((lo, hi))
    c0 = _crossing(fits[big[0]], fits[big[1]], center, scale)
    if c0 is None or not lo <= c0 <= hi:
        # transition narrower than the coarse spacing; centre on the half-failure point instead
        c0 = _half_point(data[sizes[-1]], trials)
        if c0 is None:
            raise NoCrossing(f"no crossing in bracket [{lo}, {hi}]")
    half = (hi - lo) / 4
    window = (max(lo, c0 - half), min(hi, c0 + half))
    run([float(e) for e in np.round(np.linspace(window[0], window[1], refine_points), 12)])
    fits = fit(window)
    est = _crossing(fits[big[0]], fits[big[1]], center, scale)
    if est is None or not lo <= est <= hi:
        raise NoCrossing(f"no crossing in bracket [{lo}, {hi}]")

    # parametric bootstrap over the binomial counts
    rng = np.random.default_rng(np.random.SeedSequence([seed, 2, 7919]))
    reps = []
    for _ in range(bootstrap):
        bf = {}
        for L in big:
            es = [e for e in sorted(data[L]) if window[0] <= e <= window[1]]
            p = np.array([data[L][e] / trials for e in es])
            k = rng.binomial(trials, p)
            bf[L] = fit_logistic(es, k, [trials] * len(es), center, scale)
        c = _crossing(bf[big[0]], bf[big[1]], center, scale)
        if c is not None and lo <= c <= hi:
            reps.append(c)
    if reps:
        ci_lo, ci_hi = (float(v) for v in np.percentile(reps, [2.5, 97.5]))
        ci_lo, ci_hi = min(ci_lo, est), max(ci_hi, est)
    else:
        ci_lo = ci_hi = est
    pts = tuple((e, L, data[L][e], trials) for L in sizes for e in sorted(data[L]))
    return ThresholdEstimate(float(est), ci_lo, ci_hi, sizes, trials, (lo, hi), pts,
                             {L: fits[L] for L in big})


def fusion_threshold(family, code, strategy, template: PhysicalFusionModel, sizes, trials: int,
                     bracket, seed: int = 0, swap_roles: bool = False, **kw) -> ThresholdEstimate:
    def probs(etas):
        return fusion_probabilities(code, strategy, template, etas, swap_roles)
    return estimate_threshold(family, probs, sizes, trials, bracket, seed, **kw)


def failure_rate(family, L: int, probs_row, trials: int, seed: int = 0) -> float:
    return float(count_failures(family, L, np.atleast_2d(probs_row), trials, seed)[0] / trials)

