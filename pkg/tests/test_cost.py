import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fbqc_compare.cost import (
    InvalidSchedule,
    Leaf,
    Merge,
    apply_merge,
    encoded_diagram,
    lower_bound,
    optimize_schedule,
    photons_per_encoded_fusion,
    schedule_cost,
    tree_stats,
    validate_schedule,
)
from fbqc_compare.cost.oracle import exhaustive_cost
from fbqc_compare.graphs import (
    GraphState,
    ResourceFamily,
    ShorCode,
    apply_shor_encoding,
    build_base_state,
    encoded_qubit,
    lc_equivalent_states,
    lc_isomorphic,
)


def path(n):
    return GraphState.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def ring(n):
    return GraphState.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(n):
    return GraphState.from_edges(n, [(0, i) for i in range(1, n)])


def random_tree(rng, leaves):
    """Random valid merge tree: fragments are (tree, open labels)."""
    frags = [(Leaf((3 * k, 3 * k + 1, 3 * k + 2)), [3 * k, 3 * k + 1, 3 * k + 2]) for k in range(leaves)]
    while len(frags) > 1:
        i, j = sorted(rng.choice(len(frags), 2, replace=False))
        (ta, oa), (tb, ob) = frags[i], frags[j]
        # keep at least three open qubits after the merge
        most = min(len(oa), len(ob), (len(oa) + len(ob) - 3) // 2, 3)
        n = int(rng.integers(1, most + 1))
        ra = list(rng.permutation(oa))[:n]
        rb = list(rng.permutation(ob))[:n]
        pairs = tuple((int(a), int(b)) for a, b in zip(ra, rb))
        tree = Merge(ta, tb, pairs)
        rest = [q for q in oa if q not in ra] + [q for q in ob if q not in rb]
        frags = [f for k, f in enumerate(frags) if k not in (i, j)] + [(tree, rest)]
    return frags[0]


# -- cost recurrence -----------------------------------------------------------

def test_single_leaf_costs_one():
    assert schedule_cost(Leaf((0, 1, 2))) == 1


def test_two_leaves_one_fusion():
    assert schedule_cost(Merge(Leaf((0, 1, 2)), Leaf((3, 4, 5)), ((2, 3),))) == 4


def balanced(k, base=0):
    """Balanced tree of 2**k leaves with one fusion per merge; returns (tree, open, next label)."""
    if k == 0:
        return Leaf((base, base + 1, base + 2)), [base, base + 1, base + 2], base + 3
    a, oa, nxt = balanced(k - 1, base)
    b, ob, nxt = balanced(k - 1, nxt)
    tree = Merge(a, b, ((oa[-1], ob[0]),))
    return tree, oa[:-1] + ob[1:], nxt


@pytest.mark.parametrize("k", range(11))
def test_balanced_tree_hits_bound(k):
    tree, open_q, _ = balanced(k)
    S = len(open_q)
    assert S == 2 ** k + 2
    assert schedule_cost(tree) == lower_bound(S) == (S - 2) ** 2


def test_invalid_trees_rejected():
    with pytest.raises(InvalidSchedule):
        schedule_cost(Merge(Leaf((0, 1, 2)), Leaf((0, 4, 5)), ((2, 4),)))   # label reused
    with pytest.raises(InvalidSchedule):
        schedule_cost(Merge(Leaf((0, 1, 2)), Leaf((3, 4, 5)), ((2, 9),)))   # not an open qubit
    with pytest.raises(InvalidSchedule):
        schedule_cost(Merge(Leaf((0, 1, 2)), Leaf((3, 4, 5)), ((2, 3), (2, 4))))


def test_lower_bound_values():
    assert lower_bound(224) == 49284
    assert lower_bound(3) == 1
    assert lower_bound(112) == 12100
    with pytest.raises(ValueError):
        lower_bound(2)


def test_monotone_in_fusion_count():
    a = Merge(Leaf((0, 1, 2)), Leaf((3, 4, 5)), ((2, 3),))
    b = Merge(Leaf((0, 1, 2)), Leaf((3, 4, 5)), ((2, 3), (1, 4)))
    assert schedule_cost(b) == 2 * schedule_cost(a)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2 ** 32 - 1))
def test_conservation_and_bound(leaves, seed):
    tree, open_q = random_tree(np.random.default_rng(seed), leaves)
    stats = tree_stats(tree)
    S = len(open_q)
    assert 3 * stats.leaves - 2 * stats.fusions == S
    assert schedule_cost(tree) >= lower_bound(S)


def test_deep_tree_uses_wide_integers():
    tree, open_q, _ = balanced(14)
    assert schedule_cost(tree) == (len(open_q) - 2) ** 2 == 4 ** 14


# -- graph-level fusion ----------------------------------------------------------

def test_paths_fuse_end_to_end():
    out = apply_merge(path(3), path(3), [(2, 0)])
    assert lc_isomorphic(out, path(4))


def test_two_paths_fused_at_both_ends_give_ring():
    out = apply_merge(path(5), path(5), [(0, 0), (4, 4)])
    assert out.num_qubits == 6
    assert lc_isomorphic(out, ring(6))


def test_star_grows_by_one_leaf():
    out = apply_merge(star(4), path(3), [(3, 0)], kinds=["merge"])
    assert lc_isomorphic(out, star(5))
    # the same growth by simulating three 3GHZ states fused in a chain
    tree = Merge(Merge(Leaf((0, 1, 2)), Leaf((3, 4, 5)), ((2, 3),)), Leaf((6, 7, 8)), ((5, 6),))
    assert validate_schedule(tree, star(5))


def test_apply_merge_rejects_bad_pairs():
    with pytest.raises(ValueError):
        apply_merge(star(4), path(3), [(0, 0)])     # centre has degree 3
    with pytest.raises(ValueError):
        apply_merge(path(3), path(3), [(0, 0), (0, 2)])


@pytest.mark.parametrize("kind, hadamard", [("merge", False), ("edge", True)])
def test_apply_merge_matches_stabilizer_simulation(kind, hadamard):
    # a plain Bell fusion joins the GHZ states; a Hadamard first gives an edge
    tree = Merge(Leaf((0, 1, 2)), Leaf((3, 4, 5)), ((2, 3),), (hadamard,))
    assert validate_schedule(tree, apply_merge(path(3), path(3), [(2, 0)], [kind]))


# -- schedule validation and optimisation ------------------------------------------

def test_single_ghz_validates():
    assert validate_schedule(Leaf((0, 1, 2)), path(3))


def test_path_schedule_is_not_a_ring():
    tree = Merge(Merge(Leaf((0, 1, 2)), Leaf((3, 4, 5)), ((2, 3),)),
                 Merge(Leaf((6, 7, 8)), Leaf((9, 10, 11)), ((8, 9),)), ((5, 6),))
    assert tree_stats(tree).leaves == 4
    assert not validate_schedule(tree, ring(6))


def test_three_qubit_path_costs_one():
    assert optimize_schedule(path(3)).cost == 1


def test_six_ring_validates():
    res = optimize_schedule(ring(6))
    assert res.target_matched
    assert res.cost >= lower_bound(6)


@pytest.mark.parametrize("S", [4, 6, 10, 18, 34])
def test_bound_attained_on_paths(S):
    res = optimize_schedule(path(S))
    assert res.cost == (S - 2) ** 2
    assert res.target_matched


def test_optimizer_deterministic():
    d = encoded_diagram(build_base_state(ResourceFamily.SIX_RING), ShorCode(2, 2))
    a = optimize_schedule(d, search_budget=5000, seed=3, method="anneal")
    b = optimize_schedule(d, search_budget=5000, seed=3, method="anneal")
    assert a == b


def test_annealer_builds_the_target():
    g = build_base_state(ResourceFamily.SIX_RING)
    d = encoded_diagram(g, ShorCode(2, 2))
    res = optimize_schedule(d, search_budget=2000, seed=1, method="anneal")
    assert validate_schedule(res.tree, apply_shor_encoding(g, ShorCode(2, 2)))
    assert res.cost >= 1520


@pytest.mark.parametrize("fam, code, published", [
    (ResourceFamily.FOUR_STAR, ShorCode(2, 2), 256),
    (ResourceFamily.SIX_RING, ShorCode(2, 2), 1520),
    (ResourceFamily.EIGHT_LD, ShorCode(2, 2), 1120),
])
def test_small_encoded_costs(fam, code, published):
    g = build_base_state(fam)
    res = optimize_schedule(encoded_diagram(g, code))
    assert res.cost == published
    assert validate_schedule(res.tree, apply_shor_encoding(g, code))


# exhaustive search over all fusion sequences from 3GHZ states
@pytest.mark.parametrize("target, expected", [
    (star(4), 4), (path(5), 10), (path(6), 16), (ring(5), 56), (ring(6), 80),
])
def test_optimizer_matches_exhaustive_oracle(target, expected):
    res = optimize_schedule(target)
    best = exhaustive_cost(target, cost_cap=res.cost)
    assert best == expected
    assert res.cost == best


# -- photons per encoded fusion ------------------------------------------------------

def test_photon_metric_trivial():
    assert photons_per_encoded_fusion(None, ShorCode(1, 1)).value == 2


def test_photon_metric_blind_to_state_size():
    a = photons_per_encoded_fusion(ResourceFamily.FOUR_STAR, ShorCode(2, 2))
    b = photons_per_encoded_fusion(None, ShorCode(2, 2))     # stands in for a 100-star
    assert a.value == b.value
    assert a.warning


def test_photon_metric_depends_on_bookkeeping():
    # the {2,2} 4-star, rebuilt by nesting {1,2} inside {2,1}, is the same state
    star4 = build_base_state(ResourceFamily.FOUR_STAR)
    outer, inner = ShorCode(2, 1), ShorCode(1, 2)
    nested = apply_shor_encoding(apply_shor_encoding(star4, outer), inner)
    direct = apply_shor_encoding(star4, ShorCode(2, 2))
    perm = [0] * direct.num_qubits
    for v in range(4):
        for i in range(2):
            mid = encoded_qubit(v, i, 0, outer)
            for j in range(2):
                perm[encoded_qubit(mid, 0, j, inner)] = encoded_qubit(v, i, j, ShorCode(2, 2))
    adj = nested.adjacency()
    relabelled = GraphState.from_edges(direct.num_qubits,
                                       [(perm[u], perm[v]) for u, v in zip(*np.nonzero(np.triu(adj)))])
    assert lc_equivalent_states(relabelled, direct)
    # same state, different headline numbers depending on the level called "encoded"
    assert photons_per_encoded_fusion(ResourceFamily.FOUR_STAR, ShorCode(2, 2)).value == 8
    assert photons_per_encoded_fusion(ResourceFamily.EIGHT_LD, inner).value == 4
