import itertools

import numpy as np
import pytest

from fbqc_compare.graphs import (
    GraphState,
    ResourceFamily,
    ShorCode,
    apply_shor_encoding,
    build_base_state,
    encoded_qubit,
    graph_to_tableau,
    lc_equivalent_states,
    lc_isomorphic,
    photon_count,
    tableau_to_graph,
)
from fbqc_compare.reference import load_reference_table
from fbqc_compare.stabilizer import StabilizerTableau, ghz_tableau


def _pauli_group(tab):
    """All elements of the stabilizer group as (x, z) bit tuples, signs ignored."""
    rows = list(zip(tab.x, tab.z))
    out = set()
    for mask in itertools.product((0, 1), repeat=len(rows)):
        x = np.zeros(tab.num_qubits, dtype=np.uint8)
        z = np.zeros(tab.num_qubits, dtype=np.uint8)
        for bit, (rx, rz) in zip(mask, rows):
            if bit:
                x ^= rx
                z ^= rz
        out.add((tuple(x), tuple(z)))
    return out


def test_six_ring_edges():
    g = build_base_state(ResourceFamily.SIX_RING)
    assert g.num_qubits == 6
    assert g.sorted_edges() == [(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]


def test_bell_pair():
    g = build_base_state(ResourceFamily.BELL_PAIR)
    assert (g.num_qubits, g.sorted_edges()) == (2, [(0, 1)])


def test_four_star_is_ghz4():
    g = build_base_state(ResourceFamily.FOUR_STAR)
    assert sorted(g.degree(q) for q in range(4)) == [1, 1, 1, 3]
    # GHZ4 graph form via canonicalisation, compared by local-Clifford check
    ghz = tableau_to_graph(ghz_tableau(4))
    assert lc_isomorphic(g, ghz)


def test_eight_ld_default_and_override():
    g = build_base_state(ResourceFamily.EIGHT_LD)
    assert g.num_qubits == 8 and g.is_connected()
    ring = [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (3, 7)]
    h = build_base_state(ResourceFamily.EIGHT_LD, ring)
    assert len(h.edges) == 8
    with pytest.raises(ValueError):
        build_base_state(ResourceFamily.EIGHT_LD, [(0, 1)])


def test_graph_state_rejects_bad_edges():
    with pytest.raises(ValueError):
        GraphState.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        GraphState.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        GraphState.from_edges(3, [(0, 3)])


def test_edge_list_text_round_trip(tmp_path):
    g = build_base_state(ResourceFamily.SIX_RING)
    text = g.to_text()
    assert text.splitlines()[0] == "qubits 6"
    assert text.splitlines()[1] == "0 1"
    p = tmp_path / "ring.txt"
    p.write_text(text)
    assert GraphState.read(p) == g


def test_graph_to_tableau_bell():
    tab = graph_to_tableau(build_base_state(ResourceFamily.BELL_PAIR))
    assert sorted(tab.paulis()) == ["+XZ", "+ZX"]


def test_ring_generators_have_one_x_two_z():
    tab = graph_to_tableau(build_base_state(ResourceFamily.SIX_RING))
    for p in tab.paulis():
        assert p.count("X") == 1 and p.count("Z") == 2


def test_tableau_round_trip_idempotent():
    for fam in ResourceFamily:
        g = build_base_state(fam)
        once = tableau_to_graph(graph_to_tableau(g))
        assert once == g
        assert tableau_to_graph(graph_to_tableau(once)) == once


@pytest.mark.parametrize("fam", list(ResourceFamily))
@pytest.mark.parametrize("code", [ShorCode(1, 1), ShorCode(2, 1), ShorCode(1, 2), ShorCode(2, 2), ShorCode(3, 2)])
def test_encoded_states_commute_and_are_connected(fam, code):
    g = apply_shor_encoding(build_base_state(fam), code)
    assert g.num_qubits == fam.base_size * code.size
    assert g.num_qubits > 48 or graph_to_tableau(g).commutes()
    assert g.is_connected()


def test_encoded_sizes_from_table():
    assert apply_shor_encoding(build_base_state(ResourceFamily.SIX_RING), ShorCode(2, 2)).num_qubits == 24
    assert apply_shor_encoding(build_base_state(ResourceFamily.FOUR_STAR), ShorCode(7, 4)).num_qubits == 112
    for row in load_reference_table():
        code = row.code
        fam = None
        try:
            fam = ResourceFamily.parse(row.unencoded_state)
        except ValueError:
            pass
        if code is None or fam is None or row.qubit_count > 500:
            continue
        g = apply_shor_encoding(build_base_state(fam), code)
        assert g.num_qubits == row.qubit_count


@pytest.mark.parametrize("fam", list(ResourceFamily))
def test_trivial_code_is_lc_equivalent(fam):
    g = build_base_state(fam)
    assert lc_equivalent_states(apply_shor_encoding(g, ShorCode(1, 1)), g)


def test_encoding_stabilizer_group_brute_force():
    # {2,1}-encoded Bell pair against a hand-built concatenated group
    bell = build_base_state(ResourceFamily.BELL_PAIR)
    code = ShorCode(2, 1)
    enc = apply_shor_encoding(bell, code)
    # logical X_v = X on block 0 (one qubit), logical Z_v = Z on every block
    q = lambda v, i: encoded_qubit(v, i, 0, code)
    gens = [
        "".join("X" if k == q(0, 0) else "Z" if k in (q(1, 0), q(1, 1)) else "I" for k in range(4)),
        "".join("X" if k == q(1, 0) else "Z" if k in (q(0, 0), q(0, 1)) else "I" for k in range(4)),
        "".join("X" if k in (q(0, 0), q(0, 1)) else "I" for k in range(4)),
        "".join("X" if k in (q(1, 0), q(1, 1)) else "I" for k in range(4)),
    ]
    hand = StabilizerTableau.from_strings(gens)
    assert hand.is_state()
    assert lc_equivalent_states(enc, tableau_to_graph(hand))
    assert len(_pauli_group(hand)) == 16


def test_shor_code_rejects_zero():
    with pytest.raises(ValueError):
        ShorCode(0, 2)
    with pytest.raises(ValueError):
        ShorCode(2, 0)


def test_photon_count():
    assert photon_count(ResourceFamily.EIGHT_LD, ShorCode(2, 2), 1) == 32
    assert photon_count(ResourceFamily.BELL_PAIR, ShorCode(1, 1), 1) == 2
    assert photon_count(ResourceFamily.SIX_RING, ShorCode(7, 4), 1) == 168
    assert photon_count(ResourceFamily.SIX_RING, ShorCode(7, 4), 2) == 336
