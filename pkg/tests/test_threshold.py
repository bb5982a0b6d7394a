import json
from collections import deque

import networkx as nx
import numpy as np
import pytest

from fbqc_compare.fusion import BOTH, NEITHER, XX_ONLY, ZZ_ONLY, PhysicalFusionModel, RandomizedFailure
from fbqc_compare.graphs import ShorCode
from fbqc_compare.threshold.estimate import (
    NoCrossing,
    bond_erasure_probabilities,
    count_failures,
    estimate_threshold,
    fit_logistic,
    fusion_probabilities,
)
from fbqc_compare.threshold.network import build_network, load_definition
from fbqc_compare.threshold.percolation import graph_wraps, network_failures, sample_failure


def _bfs_wraps(g, erased):
    """Independent check: lift the erased subgraph to the cover and look for a node reached twice."""
    adj = {}
    for e in np.nonzero(erased)[0]:
        u, v, s = int(g.u[e]), int(g.v[e]), tuple(int(t) for t in g.shift[e])
        adj.setdefault(u, []).append((v, s))
        adj.setdefault(v, []).append((u, tuple(-t for t in s)))
    pos = {}
    for start in adj:
        if start in pos:
            continue
        pos[start] = (0, 0, 0)
        todo = deque([start])
        while todo:
            a = todo.popleft()
            for b, s in adj[a]:
                want = tuple(x + y for x, y in zip(pos[a], s))
                if b not in pos:
                    pos[b] = want
                    todo.append(b)
                elif pos[b] != want:
                    return True
    return False


@pytest.mark.parametrize("fam", ["6ring", "4star", "8ld"])
@pytest.mark.parametrize("L", [3, 4])
def test_network_site_counts(fam, L):
    net = build_network(fam, L)
    per_cell = len(load_definition(fam)["sites"])
    assert net.num_sites == per_cell * L ** 3
    assert len(net.dual.u) == net.num_sites
    if fam == "6ring":
        assert net.num_sites == 3 * L ** 3


@pytest.mark.parametrize("fam", ["6ring", "4star", "8ld"])
def test_syndrome_graphs_connected(fam):
    net = build_network(fam, 3)
    for g in (net.primal, net.dual):
        h = nx.MultiGraph()
        h.add_nodes_from(range(g.num_nodes))
        h.add_edges_from(zip(g.u.tolist(), g.v.tolist()))
        assert nx.is_connected(h)


def test_cubic_primal_is_six_regular():
    g = build_network("6ring", 3).primal
    deg = np.bincount(np.concatenate([g.u, g.v]), minlength=g.num_nodes)
    assert (deg == 6).all()


def test_small_lattice_rejected():
    with pytest.raises(ValueError):
        build_network("6ring", 2)


def test_hand_placed_spanning_path():
    net = build_network("6ring", 3)
    g = net.primal
    erased = np.zeros(net.num_sites, dtype=bool)
    # x-direction edges along the row y = z = 0 close around the torus
    for x in range(3):
        cell = (x * 3 + 0) * 3 + 0
        erased[cell * 3 + 0] = True
    assert graph_wraps(g, erased)
    erased[0] = False
    assert not graph_wraps(g, erased)
    # a closed square of four edges does not wind
    sq = np.zeros(net.num_sites, dtype=bool)
    c = lambda x, y, z: ((x % 3) * 3 + y % 3) * 3 + z % 3
    sq[c(0, 0, 0) * 3 + 0] = sq[c(0, 0, 0) * 3 + 1] = True
    sq[c(1, 0, 0) * 3 + 1] = sq[c(0, 1, 0) * 3 + 0] = True
    assert not graph_wraps(g, sq)


@pytest.mark.parametrize("fam", ["6ring", "4star", "8ld"])
def test_wrap_detection_matches_cover_search(fam):
    rng = np.random.default_rng(7)
    net = build_network(fam, 3)
    for g in (net.primal, net.dual):
        for _ in range(1000 // 6 + 1):
            erased = rng.random(len(g.u)) < rng.uniform(0.1, 0.6)
            assert graph_wraps(g, erased) == _bfs_wraps(g, erased)


def test_erasure_tagging():
    net = build_network("6ring", 3)
    k = net.num_sites
    assert not network_failures(net, np.full(k, BOTH))[0]
    assert network_failures(net, np.full(k, NEITHER))[0]
    # XX missing everywhere erases only the primal graph, which is enough to fail
    assert network_failures(net, np.full(k, ZZ_ONLY))[0]
    assert network_failures(net, np.full(k, XX_ONLY))[0]


def test_full_loss_always_fails():
    rng = np.random.default_rng(0)
    for L in (3, 4):
        net = build_network("6ring", L)
        model = PhysicalFusionModel(1.0)
        assert all(sample_failure(net, ShorCode(1, 1), RandomizedFailure(), model, rng) for _ in range(5))


def test_lossless_draw_runs():
    net = build_network("6ring", 4)
    out = sample_failure(net, ShorCode(1, 1), RandomizedFailure(), PhysicalFusionModel(0), np.random.default_rng(1))
    assert isinstance(out, bool)


def test_monotone_with_common_random_numbers():
    qs = np.linspace(0.15, 0.35, 9)
    fails = count_failures("6ring", 6, bond_erasure_probabilities(qs), 400, seed=3)
    assert all(a <= b for a, b in zip(fails, fails[1:]))


def test_count_failures_deterministic_and_worker_independent():
    probs = bond_erasure_probabilities([0.25])
    a = count_failures("6ring", 5, probs, 600, seed=9, block=100)
    b = count_failures("6ring", 5, probs, 600, seed=9, block=100, workers=2)
    assert (a == b).all()


def test_finite_size_sign_at_bracket_ends():
    probs = bond_erasure_probabilities([0.18, 0.32])
    small = count_failures("6ring", 4, probs, 400, seed=1)
    large = count_failures("6ring", 8, probs, 400, seed=1)
    assert large[0] < small[0]
    assert large[1] > small[1]


def test_logistic_fit_recovers_parameters():
    x = np.linspace(-1, 1, 9)
    p = 1 / (1 + np.exp(-(0.3 + 2.0 * x)))
    a, b = fit_logistic(x, 1e6 * p, [1e6] * 9, 0.0, 1.0)
    assert abs(a - 0.3) < 1e-3 and abs(b - 2.0) < 1e-3


def test_bond_percolation_control():
    est = estimate_threshold("6ring", bond_erasure_probabilities, [6, 10], 2000, (0.2, 0.3), seed=2,
                             bootstrap=50)
    assert abs(est.threshold - 0.2488) < 0.01
    assert est.ci_low <= est.threshold <= est.ci_high
    assert 0.2 <= est.threshold <= 0.3


def test_estimate_is_deterministic():
    kw = dict(sizes=[4, 6], trials=300, bracket=(0.2, 0.3), seed=5, bootstrap=20)
    a = estimate_threshold("6ring", bond_erasure_probabilities, **kw)
    b = estimate_threshold("6ring", bond_erasure_probabilities, **kw)
    assert a == b


def test_everything_erased_gives_zero():
    def erase_all(etas):
        return np.tile([0.0, 0.0, 0.0, 1.0], (len(etas), 1))
    est = estimate_threshold("6ring", erase_all, [3, 4], 50, (0.0, 0.1), bootstrap=0)
    assert est.threshold == 0.0 and est.note


def test_no_crossing_reported():
    # both curves sit at zero failure, nothing to intersect
    with pytest.raises(NoCrossing):
        estimate_threshold("6ring", bond_erasure_probabilities, [4, 6], 100, (0.0, 0.05), bootstrap=0)


def test_fusion_probabilities_rows():
    rows = fusion_probabilities(ShorCode(2, 2), RandomizedFailure(), PhysicalFusionModel(0, boosted=True), [0, 0.1])
    assert rows.shape == (2, 4)
    assert np.allclose(rows.sum(axis=1), 1)
    assert rows[1, 3] > rows[0, 3]


def test_network_definition_override(tmp_path):
    defn = load_definition("6ring")
    p = tmp_path / "net.json"
    p.write_text(json.dumps(defn))
    a = build_network("6ring", 3, definition_path=p)
    b = build_network("6ring", 3)
    assert (a.primal.u == b.primal.u).all() and (a.dual.shift == b.dual.shift).all()


def test_bundled_definitions_flag_assumptions():
    for fam in ("4star", "8ld"):
        d = load_definition(fam)
        assert d["assumed"] is True
        for s in d["sites"]:
            assert len(s["primal"]) == 3 and len(s["dual"]) == 3


def test_half_point_interpolates():
    from fbqc_compare.threshold.estimate import _half_point
    assert _half_point({0.0: 0, 0.1: 20, 0.2: 100}, 100) == pytest.approx(0.1375)
    assert _half_point({0.0: 0, 0.1: 10}, 100) is None
