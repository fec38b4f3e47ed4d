import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from solvagraph.catalog import catalog
from solvagraph.elements import Permutation
from solvagraph.group_core import ElementSet, center, conjugacy_classes, is_solvable, subgroup_generated
from solvagraph.oracle import NaiveOracle, radical_oracle
from solvagraph.sol_checks import verify_solvabilizer_laws
from solvagraph.solvabilizer import (
    RelationEngine,
    RelationMode,
    SGroupReport,
    engine,
    is_s_group,
    pair_related,
    sol_of_element,
    sol_of_set,
    solvable_radical,
)

import bruteforce as bf
from conftest import group


def idx(G, *cycles):
    return G.index_of(Permutation.from_cycles([tuple(a - 1 for a in c) for c in cycles], G.elements[0].degree))


# brute-force values computed once with tests/bruteforce.py (tuple closures,
# all-pairs commutators, no library code) and frozen here
A5_SOL = {"three_cycle": 24, "involution": 36, "five_cycle": 10}


def test_pair_examples(A5):
    three, inv, five = idx(A5, (1, 2, 3)), idx(A5, (2, 3), (4, 5)), idx(A5, (1, 2, 3, 4, 5))
    assert pair_related(A5, three, inv)
    assert bf.is_solvable(bf.closure([bf.cycle(5, (1, 2, 3)), bf.cycle(5, (2, 3), (4, 5))], 5), 5)
    assert not pair_related(A5, five, three)
    assert all(pair_related(A5, 0, g) for g in range(60))


def test_a5_solvabilizer_sizes(A5):
    three = sol_of_element(A5, idx(A5, (1, 2, 3)))
    assert three.size == A5_SOL["three_cycle"]
    assert not three.is_subgroup
    assert sol_of_element(A5, idx(A5, (2, 3), (4, 5))).size == A5_SOL["involution"]
    assert sol_of_element(A5, idx(A5, (1, 2, 3, 4, 5))).size == A5_SOL["five_cycle"]
    assert sol_of_element(A5, 0).size == 60


def test_sol_of_identity_is_everything(get_group):
    for spec in ["C1", "S4", "SL2(5)"]:
        G = get_group(spec)
        r = sol_of_element(G, 0)
        assert r.set == G.full_set() and r.is_subgroup


def test_transport_matches_direct_sweep(A5):
    for x in range(60):
        a = sol_of_element(A5, x)
        b = sol_of_element(A5, x, transport=False)
        assert a.set == b.set


def test_empty_set_conventions(A5):
    empty = ElementSet.empty(A5)
    A = ElementSet.from_indices(A5, [1, 2, 3])
    assert sol_of_set(A, empty).set == A
    assert sol_of_set(empty, A).set == empty
    assert sol_of_set(empty, empty).set == empty


def test_sol_of_union_is_intersection(A5):
    three, inv = idx(A5, (1, 2, 3)), idx(A5, (2, 3), (4, 5))
    both = sol_of_set(A5.full_set(), ElementSet.from_indices(A5, [three, inv]))
    assert both.set == sol_of_element(A5, three).set & sol_of_element(A5, inv).set
    # same thing, straight from the tuple-level brute force
    x, y = bf.cycle(5, (1, 2, 3)), bf.cycle(5, (2, 3), (4, 5))
    ref = sum(
        bf.is_solvable(bf.closure([g, x], 5), 5) and bf.is_solvable(bf.closure([g, y], 5), 5)
        for g in bf.alternating(5)
    )
    assert both.size == ref


def test_radical_examples(A5, SL25, get_group):
    assert solvable_radical(A5) == A5.identity_set()
    assert solvable_radical(SL25) == center(SL25)
    S4 = get_group("S4")
    assert solvable_radical(S4) == S4.full_set()
    assert solvable_radical(get_group("A5 x C2")).size == 2


@pytest.mark.parametrize("spec", [e.spec for e in catalog(360)])
def test_radical_is_largest_normal_solvable_subgroup(spec):
    G = group(spec)
    assert solvable_radical(G) == radical_oracle(G)


def test_nilpotent_radical_is_the_hypercenter_for_small_cases(S3, D4, get_group):
    # S3 and A5 have trivial hypercenter; D4 is nilpotent; SL2(3) stops at its center
    assert solvable_radical(S3, "nilpotent").size == 1
    assert solvable_radical(D4, "nilpotent").size == 8
    assert solvable_radical(get_group("SL2(3)"), "nilpotent").size == 2


# --- S-groups ----------------------------------------------------------------

def test_s_group_examples(A5, get_group):
    assert is_s_group(get_group("C1")).is_s_group
    assert is_s_group(get_group("S4")).is_s_group
    rep = is_s_group(A5)
    assert not rep.is_s_group and rep.witness is not None
    a, b, x = rep.witness
    assert pair_related(A5, a, x) and pair_related(A5, b, x)
    assert not pair_related(A5, A5.mult(a, b), x)
    assert rep.verify(A5)


def test_witness_check_rejects_a_bogus_triple(A5):
    assert not SGroupReport(False, (0, 0, 0)).verify(A5)


def test_witness_is_lexicographically_least(A5):
    rep = is_s_group(A5)
    a, b, x = rep.witness
    M = engine(A5).matrix()
    # least x whose solvabilizer is not closed, then least a, then least b
    for y in range(x):
        S = np.flatnonzero(M[y])
        assert M[y][A5.table[np.ix_(S, S)]].all()
    S = np.flatnonzero(M[x])
    for a2 in S[S < a]:
        assert M[x][A5.table[a2, S]].all()
    assert all(M[x][A5.table[a, b2]] for b2 in S[S < b])


@pytest.mark.parametrize("spec", [e.spec for e in catalog(360)])
def test_s_group_iff_solvable(spec):
    G = group(spec)
    rep = is_s_group(G)
    assert rep.is_s_group == is_solvable(G.full_set())
    assert rep.verify(G)


# --- engine against the naive oracle ----------------------------------------

@pytest.mark.parametrize("mode", ["solvable", "nilpotent"])
@pytest.mark.parametrize("spec", ["S4", "A5", "SL2(3)", "D6", "S3 x S3"])
def test_engine_matches_naive_all_pairs(spec, mode):
    G = group(spec)
    ref = NaiveOracle(G).relation_matrix(mode)
    assert np.array_equal(engine(G, mode).matrix(), ref)
    plain = RelationEngine(G, RelationMode(mode), shortcuts=False)
    assert np.array_equal(plain.matrix(), ref)


def test_a5_degree_multiset_from_tuple_brute_force(A5):
    M = engine(A5).matrix()
    degs = sorted(60 - M.sum(axis=1))
    counts = {d: degs.count(d) for d in set(degs)}
    assert counts == {0: 1, 24: 15, 36: 20, 50: 24}


def test_threaded_sweep_matches_serial(get_group):
    G = get_group("S5")
    serial = RelationEngine(G, RelationMode.SOLVABLE, threads=1).matrix()
    threaded = RelationEngine(G, RelationMode.SOLVABLE, threads=4).matrix()
    assert np.array_equal(serial, threaded)


def test_matrix_is_read_only(A5):
    M = engine(A5).matrix()
    with pytest.raises(ValueError):
        M[0, 0] = False


# --- set identities as properties -------------------------------------------

masks = st.lists(st.booleans(), min_size=60, max_size=60).map(np.array)


@settings(max_examples=60)
@given(masks, masks, masks)
def test_set_identities_on_a5(a, b, c):
    G = group("A5")
    A, B, C = (ElementSet(G, m) for m in (a, b, c))
    sol = lambda X, Y: sol_of_set(X, Y).set  # noqa: E731
    # monotone in both arguments
    assert sol(A & B, C) <= sol(A, C)
    assert sol(C, A | B) <= sol(C, A)
    # restriction to a smaller ambient set
    assert sol(A & B, C) == (A & B) & sol(A, C)
    # unions and intersections of the target
    assert sol(C, A | B) == sol(C, A) & sol(C, B)
    assert sol(C, A) | sol(C, B) <= sol(C, A & B)
    # a set is recovered from its solvabilizer inside any B
    assert sol(A, sol(B, A)) == A


@settings(max_examples=30)
@given(st.integers(0, 119), st.integers(0, 119))
def test_conjugation_moves_solvabilizers(x, g):
    G = group("S5")
    y = G.conjugate(x, g)
    assert sol_of_element(G, x).set.conjugate_by(g) == sol_of_element(G, y, transport=False).set


@settings(max_examples=30)
@given(st.integers(0, 119), st.integers(1, 60))
def test_generators_of_one_cyclic_group_share_a_solvabilizer(x, k):
    G = group("S5")
    y = int(G.power_map(k)[x])
    if subgroup_generated(G, [y]) == subgroup_generated(G, [x]):
        assert sol_of_element(G, x).set == sol_of_element(G, y).set


@pytest.mark.parametrize("spec", ["C1", "C6", "S3", "D4", "S4", "A5", "SL2(5)", "A5 x C2", "PSL2(7)"])
def test_law_suite_passes(spec):
    checks = verify_solvabilizer_laws(group(spec))
    assert checks.ok, [r.to_dict() for r in checks.failures()]


def test_abelian_groups_pass_trivially(get_group):
    checks = verify_solvabilizer_laws(get_group("C12"))
    assert checks.ok
    vac = {r.name for r in checks.results if r.detail.startswith("vacuous")}
    assert "simple_s_group_is_abelian" in vac


def test_class_sizes_divide_solvabilizers_in_a5(A5):
    ct = conjugacy_classes(A5)
    for c, r in enumerate(ct.representatives):
        assert sol_of_element(A5, r).size % ct.centralizer_orders[c] == 0
