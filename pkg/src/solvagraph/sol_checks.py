"""Executable checks of the solvabilizer laws on a concrete group.

Each check compares two independently obtained quantities wherever that is
possible (a direct sweep against a transported one, a quotient computed from
scratch against a projection, pairwise closures against the cached matrix).
Failures become report entries carrying the offending elements.
"""

from __future__ import annotations

import numpy as np

from .group_core import (
    ElementSet,
    FiniteGroup,
    closure_mask,
    conjugacy_classes,
    generating_set,
    is_normal,
    is_solvable,
    quotient_group,
    solvable_by_gens,
    _normal_closure,
)
from .oracle import radical_oracle
from .report import CheckList
from .solvabilizer import RelationEngine, RelationMode, engine, is_closed, is_s_group, prime_factors, solvable_radical


def normal_solvable_candidates(G: FiniteGroup) -> list[ElementSet]:
    """Proper, nontrivial, solvable normal closures of single classes."""
    ct = conjugacy_classes(G)
    seen: dict[bytes, ElementSet] = {}
    for r in ct.representatives[1:]:
        mask, _ = _normal_closure(G, [r], G.generators)
        size = int(mask.sum())
        if 1 < size < G.order and mask.tobytes() not in seen:
            N = ElementSet(G, mask)
            if is_solvable(N):
                seen[mask.tobytes()] = N
    return list(seen.values())


def is_simple(G: FiniteGroup) -> bool:
    if G.order == 1:
        return False
    ct = conjugacy_classes(G)
    return all(_normal_closure(G, [r], G.generators)[0].all() for r in ct.representatives[1:])


def _sol_set(M: np.ndarray, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A & M[B].all(axis=0)


def _first(bits: np.ndarray):
    idx = np.flatnonzero(bits)
    return int(idx[0]) if idx.size else None


def verify_solvabilizer_laws(G: FiniteGroup, seed: int = 0, samples: int = 200) -> CheckList:
    rng = np.random.default_rng(seed)
    checks = CheckList()
    T = G.table
    n = G.order
    ct = conjugacy_classes(G)
    reps = ct.representatives
    eng = engine(G, RelationMode.SOLVABLE)
    M = eng.matrix()
    sizes = M.sum(axis=1)
    R = solvable_radical(G)
    solvable = is_solvable(G.full_set())
    cent = np.asarray(ct.centralizer_orders)[ct.class_of]

    # radical
    oracle = radical_oracle(G)
    checks.add("radical_matches_oracle", R == oracle,
               f"intersection of solvabilizers {R.size}, largest normal solvable subgroup {oracle.size}")
    checks.add("solvable_iff_radical_is_group", solvable == (R.size == n),
               f"solvable={solvable}, radical size {R.size}")
    checks.add("identity_in_every_solvabilizer", bool(M[:, 0].all()))
    maps = eng.power_maps() + [G.power_map(p) for p in sorted(prime_factors(G.exponent))]
    bad = [r for r in reps if not all(M[r][m[M[r]]].all() for m in maps)]
    checks.add("solvabilizer_closed_under_powers", not bad, "", bad[:1] or None)

    # a solvable subgroup joined with a radical element stays solvable
    R_idx = R.indices()
    fail = None
    tried = 0
    for _ in range(samples * 5):
        if tried >= samples:
            break
        a, b = (int(v) for v in rng.integers(0, n, 2))
        gens = [a] if rng.random() < 0.5 else [a, b]
        H = closure_mask(G, gens)
        if not solvable_by_gens(G, [g for g in gens if g], H):
            continue
        tried += 1
        s = int(rng.choice(R_idx))
        K = closure_mask(G, gens + [s])
        if not solvable_by_gens(G, [g for g in gens + [s] if g], K):
            fail = {"H_generators": gens, "s": s}
            break
    checks.add("radical_join_solvable", fail is None, f"{tried} sampled solvable subgroups", fail)

    R_gens = generating_set(G, R.bits)
    bad = [r for r in reps if not all(M[r][T[s, M[r]]].all() for s in R_gens)]
    checks.add("radical_absorbs_solvabilizer", not bad, "Sol(G) sol(x) = sol(x)", bad[:1] or None)
    bad = [r for r in reps if sizes[r] % R.size]
    checks.add("radical_order_divides_solvabilizer", not bad, f"|Sol(G)| = {R.size}", bad[:1] or None)

    _set_identities(G, M, eng, rng, checks)

    # powers, conjugation, quotients
    bad = next((int(np.flatnonzero((M[m] != M).any(axis=1))[0]) for m in eng.power_maps()
                if not np.array_equal(M[m], M)), None)
    checks.add("same_cyclic_same_solvabilizer", bad is None, "", bad)
    bad = None
    for r in reps:
        for g in rng.integers(0, n, 3):
            y = G.conjugate(r, int(g))
            direct = eng.sweep(y)
            moved = np.zeros(n, dtype=bool)
            moved[G.conjugation_map(int(g))[M[r]]] = True
            if not np.array_equal(direct, moved):
                bad = {"x": r, "g": int(g)}
                break
    checks.add("conjugation_equivariance", bad is None, "direct sweep of g x g^-1 vs g sol(x) g^-1", bad)

    candidates = normal_solvable_candidates(G)
    quotient_bad = None
    sgroup_bad = None
    sg = is_s_group(G)
    for N in candidates:
        bad = check_quotient_law(G, N)
        if bad is not None and quotient_bad is None:
            quotient_bad = bad
        Q, _ = quotient_group(G, N)
        if is_s_group(Q).is_s_group != sg.is_s_group and sgroup_bad is None:
            sgroup_bad = {"N_size": N.size}
    if candidates:
        checks.add("quotient_solvabilizer", quotient_bad is None,
                   f"normal solvable N of sizes {[N.size for N in candidates]}", quotient_bad)
        checks.add("s_group_quotient_equivalence", sgroup_bad is None, "", sgroup_bad)
    else:
        checks.vacuous("quotient_solvabilizer", "no proper nontrivial normal solvable subgroup")
        checks.vacuous("s_group_quotient_equivalence", "no proper nontrivial normal solvable subgroup")

    # divisibility
    bad = np.flatnonzero(sizes % G.orders)
    checks.add("element_order_divides_solvabilizer", bad.size == 0, "", _first_int(bad))
    bad = np.flatnonzero(sizes % cent)
    checks.add("centralizer_divides_solvabilizer", bad.size == 0, "", _first_int(bad))
    total = int(sizes.sum())
    checks.add("group_order_divides_solvabilizer_sum", total % n == 0, f"sum {total} = {total / n:g} * {n}")
    NM = engine(G, RelationMode.NILPOTENT).matrix()
    nsizes = NM.sum(axis=1)
    bad = np.flatnonzero(nsizes % cent)
    checks.add("centralizer_divides_nilpotentizer", bad.size == 0, "", _first_int(bad))
    total = int(nsizes.sum())
    checks.add("group_order_divides_nilpotentizer_sum", total % n == 0, f"sum {total} = {total / n:g} * {n}")

    # involutions, S-groups
    invol = G.orders == 2
    bad = [r for r in reps if invol[r] and not M[r][invol].all()]
    checks.add("involution_pairs_solvable", not bad, f"{int(invol.sum())} involutions", bad[:1] or None)
    if sg.is_s_group:
        bad = None
        for _ in range(min(samples, 50)):
            H = closure_mask(G, [int(v) for v in rng.integers(0, n, 2)])
            A = rng.random(n) < rng.random()
            S = _sol_set(M, H, A)
            if not is_closed(G, S):
                bad = True
                break
        checks.add("s_group_subsets_are_subgroups", bad is None, "Sol_H(A) <= G for sampled H, A")
    else:
        checks.vacuous("s_group_subsets_are_subgroups", "not an S-group")
    if is_simple(G) and sg.is_s_group:
        checks.add("simple_s_group_is_abelian", G.is_abelian())
    else:
        checks.vacuous("simple_s_group_is_abelian", "not a simple S-group")
    witness_ok = sg.verify(G)
    checks.add("s_group_iff_solvable", sg.is_s_group == solvable and witness_ok,
               f"S-group={sg.is_s_group}, solvable={solvable}",
               list(sg.witness) if sg.witness else None)
    return checks


def _first_int(bad: np.ndarray):
    return int(bad[0]) if bad.size else None


def check_quotient_law(G: FiniteGroup, N: ElementSet) -> dict | None:
    """Compare ``Sol_{G/N}(xN)`` with the image of ``Sol_G(x)`` per class.

    The quotient's solvabilizers come from a fresh engine on ``G/N``.
    """
    Q, proj = quotient_group(G, N)
    M = engine(G).matrix()
    QM = RelationEngine(Q, RelationMode.SOLVABLE).matrix()
    for r in conjugacy_classes(G).representatives:
        image = np.zeros(Q.order, dtype=bool)
        image[proj[M[r]]] = True
        full_preimage = image[proj]
        if not np.array_equal(image, QM[proj[r]]) or not np.array_equal(full_preimage, M[r]):
            return {"x": int(r), "N_size": N.size}
    return None


def _set_identities(G: FiniteGroup, M: np.ndarray, eng: RelationEngine, rng: np.random.Generator,
                    checks: CheckList, samples: int = 40) -> None:
    n = G.order

    def rand_set(density=None) -> np.ndarray:
        p = rng.random() if density is None else density
        return rng.random(n) < p

    mono = ident2 = restr = unions = None
    for k in range(samples):
        A, C, extra = rand_set(), rand_set(), rand_set()
        if k % 7 == 0:
            A[:] = False
        B = A | extra
        if not (_sol_set(M, A, C) <= _sol_set(M, B, C)).all() or not (_sol_set(M, C, B) <= _sol_set(M, C, A)).all():
            mono = mono or {"sample": k}
        if not np.array_equal(_sol_set(M, A, _sol_set(M, B, A)), A):
            ident2 = ident2 or {"sample": k}
        if not np.array_equal(_sol_set(M, A, C), A & _sol_set(M, B, C)):
            restr = restr or {"sample": k}
        B2 = rand_set()
        lhs = _sol_set(M, C, A | B2)
        ok = np.array_equal(lhs, _sol_set(M, C, A) & _sol_set(M, C, B2))
        ok &= bool((_sol_set(M, C, A) | _sol_set(M, C, B2) <= _sol_set(M, C, A & B2)).all())
        if not ok:
            unions = unions or {"sample": k}
    checks.add("solvabilizer_monotone", mono is None, f"{samples} random subset triples", mono)
    checks.add("solvabilizer_double_identity", ident2 is None, "Sol_A(Sol_B(A)) = A", ident2)
    checks.add("solvabilizer_restriction", restr is None, "A <= B => Sol_A(C) = A & Sol_B(C)", restr)
    checks.add("solvabilizer_union_intersection", unions is None, "", unions)

    # intersection formula against the definition, pair by pair
    bad = None
    fresh = RelationEngine(G, RelationMode.SOLVABLE)
    for k in range(min(samples, 12)):
        A = np.flatnonzero(rand_set(min(1.0, 6 / n)))
        B = np.flatnonzero(rand_set(min(1.0, 4 / n)))
        direct = np.zeros(n, dtype=bool)
        for a in A:
            direct[a] = all(fresh.pair_related(int(a), int(b)) for b in B)
        Am = np.zeros(n, dtype=bool)
        Am[A] = True
        Bm = np.zeros(n, dtype=bool)
        Bm[B] = True
        if not np.array_equal(direct, _sol_set(M, Am, Bm)):
            bad = {"A": A.tolist(), "B": B.tolist()}
            break
    checks.add("solvabilizer_is_intersection", bad is None, "pairwise definition vs intersection", bad)
