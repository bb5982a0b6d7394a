"""Periodic fusion networks: each fusion site is one primal and one dual syndrome edge."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from ..graphs import ResourceFamily


@dataclass(frozen=True)
class SyndromeGraph:
    num_nodes: int
    u: np.ndarray       # (E,) endpoint node ids
    v: np.ndarray
    shift: np.ndarray   # (E, 3) cell displacement from u to v, unwrapped


@dataclass(frozen=True)
class FusionNetwork:
    family: str
    L: int
    primal: SyndromeGraph
    dual: SyndromeGraph
    assumed: bool = False
    description: str = ""

    @property
    def num_sites(self) -> int:
        return len(self.primal.u)


def _cells(L: int) -> np.ndarray:
    g = np.indices((L, L, L)).reshape(3, -1).T
    return g  # (L^3, 3), row index = (x*L + y)*L + z


def _node(cells: np.ndarray, local: int, per_cell: int, L: int) -> np.ndarray:
    c = np.mod(cells, L)
    return ((c[:, 0] * L + c[:, 1]) * L + c[:, 2]) * per_cell + local


def _graph(L: int, per_cell: int, edges) -> SyndromeGraph:
    cells = _cells(L)
    us, vs, shifts = [], [], []
    for a, b, d in edges:
        d = np.asarray(d, dtype=np.int64)
        us.append(_node(cells, a, per_cell, L))
        vs.append(_node(cells + d, b, per_cell, L))
        shifts.append(np.broadcast_to(d, (len(cells), 3)))
    # order sites cell-major so that site index = cell * sites_per_cell + k
    u = np.stack(us, axis=1).reshape(-1)
    v = np.stack(vs, axis=1).reshape(-1)
    shift = np.stack(shifts, axis=1).reshape(-1, 3)
    return SyndromeGraph(L ** 3 * per_cell, u.astype(np.int64), v.astype(np.int64), shift.astype(np.int64))


def network_from_definition(defn: dict, L: int) -> FusionNetwork:
    if L < 3:
        raise ValueError(f"lattice size must be at least 3, got {L}")
    sites = defn["sites"]
    if not sites:
        raise ValueError("network definition has no sites")
    primal = _graph(L, defn["primal_nodes_per_cell"], [s["primal"] for s in sites])
    dual = _graph(L, defn["dual_nodes_per_cell"], [s["dual"] for s in sites])
    return FusionNetwork(defn["family"], L, primal, dual, bool(defn.get("assumed", False)),
                         defn.get("description", ""))


SIX_RING_DEFINITION = {
    "schema": 1, "family": "6ring", "assumed": True,
    "description": "Simple cubic primal graph; dual cubic graph on cell centres with the dual edge "
                   "through the face normal to each primal edge tagged to the same site.",
    "primal_nodes_per_cell": 1, "dual_nodes_per_cell": 1,
    "sites": [{"primal": [0, 0, d], "dual": [0, 0, d]} for d in ([1, 0, 0], [0, 1, 0], [0, 0, 1])],
}


def load_definition(family: ResourceFamily | str | None = None, path=None) -> dict:
    if path is not None:
        return json.loads(Path(path).read_text())
    fam = family if isinstance(family, ResourceFamily) else ResourceFamily.parse(family)
    if fam is ResourceFamily.SIX_RING:
        return SIX_RING_DEFINITION
    if fam is ResourceFamily.BELL_PAIR:
        raise ValueError("no fusion network is bundled for Bell pairs")
    text = resources.files("fbqc_compare.data").joinpath(f"network_{fam.value}.json").read_text()
    return json.loads(text)


def build_network(family: ResourceFamily | str, L: int, definition_path=None) -> FusionNetwork:
    return network_from_definition(load_definition(family, definition_path), L)
