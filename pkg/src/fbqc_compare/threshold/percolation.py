"""Wrapping erasure clusters on periodic graphs, via union-find with displacement tracking."""

from __future__ import annotations

import numpy as np
from numba import njit

from .network import FusionNetwork, SyndromeGraph


@njit(cache=True)
def _find(parent, off, x):
    # returns root and displacement of x from the root, compressing the path
    root = x
    dx = 0
    dy = 0
    dz = 0
    while parent[root] != root:
        dx += off[root, 0]
        dy += off[root, 1]
        dz += off[root, 2]
        root = parent[root]
    # second pass: point every node on the path straight at the root
    cur = x
    rx, ry, rz = dx, dy, dz
    while parent[cur] != cur:
        nxt = parent[cur]
        ox, oy, oz = off[cur, 0], off[cur, 1], off[cur, 2]
        parent[cur] = root
        off[cur, 0] = rx
        off[cur, 1] = ry
        off[cur, 2] = rz
        rx -= ox
        ry -= oy
        rz -= oz
        cur = nxt
    return root, dx, dy, dz


@njit(cache=True)
def wraps(num_nodes, u, v, shift, erased):
    """True if the erased edges contain a cycle that winds around the torus."""
    parent = np.arange(num_nodes)
    off = np.zeros((num_nodes, 3), dtype=np.int64)
    for e in range(u.shape[0]):
        if not erased[e]:
            continue
        ru, ux, uy, uz = _find(parent, off, u[e])
        rv, vx, vy, vz = _find(parent, off, v[e])
        # displacement of rv from ru if v sits at u + shift
        ddx = ux + shift[e, 0] - vx
        ddy = uy + shift[e, 1] - vy
        ddz = uz + shift[e, 2] - vz
        if ru == rv:
            if ddx != 0 or ddy != 0 or ddz != 0:
                return True
        else:
            parent[rv] = ru
            off[rv, 0] = ddx
            off[rv, 1] = ddy
            off[rv, 2] = ddz
    return False


@njit(cache=True)
def _fail_batch(pn, pu, pv, ps, dn, du, dv, ds, outcomes):
    t = outcomes.shape[0]
    out = np.zeros(t, dtype=np.bool_)
    for i in range(t):
        row = outcomes[i]
        # codes: 1 XX only, 2 ZZ only, 3 neither. A missing XX erases the
        # primal edge, a missing ZZ the dual one
        prim = (row == 2) | (row == 3)
        dual = (row == 1) | (row == 3)
        out[i] = wraps(pn, pu, pv, ps, prim) or wraps(dn, du, dv, ds, dual)
    return out


def graph_wraps(g: SyndromeGraph, erased: np.ndarray) -> bool:
    return bool(wraps(g.num_nodes, g.u, g.v, g.shift, np.asarray(erased, dtype=np.bool_)))


def network_failures(net: FusionNetwork, outcomes: np.ndarray) -> np.ndarray:
    """Failure flag per row of site outcomes (codes BOTH, XX_ONLY, ZZ_ONLY, NEITHER)."""
    outcomes = np.atleast_2d(np.asarray(outcomes, dtype=np.int8))
    p, d = net.primal, net.dual
    return _fail_batch(p.num_nodes, p.u, p.v, p.shift, d.num_nodes, d.u, d.v, d.shift, outcomes)


def sample_failure(net: FusionNetwork, code, strategy, model, rng: np.random.Generator,
                   swap_roles: bool = False) -> bool:
    """One network draw with every site sampled at the physical level."""
    from ..fusion import sample_encoded_fusion
    out = sample_encoded_fusion(code, strategy, model, rng, net.num_sites, swap_roles)
    return bool(network_failures(net, out[None, :])[0])
