"""Solvabilizers, nilpotentizers, the solvable radical and the S-group test.

The pair relation ``related(a, b)`` holds when ``<a, b>`` is solvable (or
nilpotent, in nilpotent mode).  The solvabilizer of ``x`` is the set of all
``g`` related to ``x``.  It is swept once per conjugacy class and carried to
the rest of the class by conjugation, since ``sol(g x g^-1) = g sol(x) g^-1``.

Inside one sweep the undecided elements are processed in orbits: ``g``,
``x^i g x^j``, ``g^k`` for ``k`` a unit modulo the exponent, and conjugates of
these by the centralizer of ``x`` all generate, together with ``x``, the same
subgroup up to conjugation in ``C_G(x)``.
"""

from __future__ import annotations

import hashlib
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .group_core import (
    ElementSet,
    FiniteGroup,
    centralizer,
    closure_mask,
    conjugacy_classes,
    generating_set,
    nilpotent_by_gens,
    solvable_by_gens,
)


class RelationMode(str, Enum):
    SOLVABLE = "solvable"
    NILPOTENT = "nilpotent"


def prime_factors(n: int) -> set[int]:
    out = set()
    k = 2
    while k * k <= n:
        while n % k == 0:
            out.add(k)
            n //= k
        k += 1
    if n > 1:
        out.add(n)
    return out


def _unit_generators(m: int) -> list[int]:
    """A generating set for the unit group modulo ``m``."""
    if m <= 2:
        return []
    units = [k for k in range(2, m) if math.gcd(k, m) == 1]
    gens: list[int] = []
    span = {1}
    for k in units:
        if k in span:
            continue
        gens.append(k)
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = a * g % m
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
    return gens


class RelationEngine:
    """Per-group, per-mode cache of pair solvability and solvabilizers."""

    def __init__(self, G: FiniteGroup, mode: RelationMode = RelationMode.SOLVABLE,
                 shortcuts: bool = True, threads: int | None = None):
        self.G = G
        self.mode = RelationMode(mode)
        self.shortcuts = shortcuts
        self.threads = threads or os.cpu_count() or 1
        self.memo: dict[bytes, tuple[int, bool]] = {}
        self.closures = 0
        self._rep_sol: dict[int, np.ndarray] = {}
        self._matrix: np.ndarray | None = None
        self._power_maps: list[np.ndarray] | None = None

    # -- subgroup predicate -------------------------------------------------

    def _shortcut(self, size: int, gens: list[int]) -> bool | None:
        if size == 1:
            return True
        if not self.shortcuts:
            return None
        primes = prime_factors(size)
        if self.mode is RelationMode.SOLVABLE:
            # order < 60, odd order, or at most two prime divisors
            if size < 60 or size % 2 or len(primes) <= 2:
                return True
        else:
            if len(primes) == 1:
                return True
            T = self.G.table
            if all(T[a, b] == T[b, a] for a in gens for b in gens):
                return True
        return None

    def subgroup_related(self, mask: np.ndarray, gens: list[int]) -> bool:
        size = int(mask.sum())
        quick = self._shortcut(size, gens)
        if quick is not None:
            return quick
        key = hashlib.blake2b(np.packbits(mask).tobytes(), digest_size=16).digest()
        hit = self.memo.get(key)
        if hit is not None and hit[0] == size:
            return hit[1]
        gens = [g for g in gens if g != 0]
        if self.mode is RelationMode.SOLVABLE:
            value = solvable_by_gens(self.G, gens, mask)
        else:
            value = nilpotent_by_gens(self.G, gens, mask)
        self.memo[key] = (size, value)
        return value

    def pair_related(self, i: int, j: int) -> bool:
        self.closures += 1
        mask = closure_mask(self.G, [i, j])
        return self.subgroup_related(mask, [i, j])

    # -- solvabilizer sweep -------------------------------------------------

    def power_maps(self) -> list[np.ndarray]:
        if self._power_maps is None:
            G = self.G
            maps = [G.inv]
            for k in _unit_generators(G.exponent):
                maps.append(G.power_map(k))
            self._power_maps = maps
        return self._power_maps

    def sweep(self, x: int) -> np.ndarray:
        """Solvabilizer mask of ``x`` computed directly, without transport."""
        G = self.G
        T = G.table
        c_mask = centralizer(G, x).bits
        maps = [T[x, :], T[:, x]] + self.power_maps()
        maps += [G.conjugation_map(c) for c in generating_set(G, c_mask)]
        decided = np.zeros(G.order, dtype=bool)
        sol = np.zeros(G.order, dtype=bool)
        for g in range(G.order):
            if decided[g]:
                continue
            self.closures += 1
            H = closure_mask(G, [x, g])
            rel = self.subgroup_related(H, [x, g])
            orbit = np.zeros(G.order, dtype=bool)
            orbit[g] = True
            frontier = np.array([g], dtype=np.intp)
            while frontier.size:
                img = np.concatenate([m[frontier] for m in maps])
                img = np.unique(img[~orbit[img]])
                orbit[img] = True
                frontier = img
            decided |= orbit
            if rel:
                decided |= H
                sol |= orbit | H
        return sol

    def rep_solvabilizers(self) -> dict[int, np.ndarray]:
        reps = conjugacy_classes(self.G).representatives
        todo = [r for r in reps if r not in self._rep_sol]
        if todo:
            if self.threads > 1 and len(todo) > 1:
                with ThreadPoolExecutor(self.threads) as ex:
                    results = list(ex.map(self.sweep, todo))
            else:
                results = [self.sweep(r) for r in todo]
            for r, m in zip(todo, results):
                m.flags.writeable = False
                self._rep_sol[r] = m
        return {r: self._rep_sol[r] for r in reps}

    def matrix(self) -> np.ndarray:
        """``M[x]`` is the solvabilizer mask of ``x``; symmetric."""
        if self._matrix is None:
            G = self.G
            ct = conjugacy_classes(G)
            rep_sol = self.rep_solvabilizers()
            M = np.zeros((G.order, G.order), dtype=bool)
            for x in range(G.order):
                r = ct.representatives[ct.class_of[x]]
                g = ct.transporter[x]
                M[x, G.conjugation_map(g)[rep_sol[r]]] = True
            M.flags.writeable = False
            self._matrix = M
        return self._matrix

    def sol_mask(self, x: int) -> np.ndarray:
        return self.matrix()[x]


def engine(G: FiniteGroup, mode: RelationMode | str = RelationMode.SOLVABLE, threads: int | None = None) -> RelationEngine:
    key = ("engine", RelationMode(mode))
    if key not in G.cache:
        G.cache[key] = RelationEngine(G, RelationMode(mode), threads=threads)
    return G.cache[key]


# --- public operations -----------------------------------------------------

@dataclass
class SolvabilizerResult:
    set: ElementSet
    ambient: ElementSet
    target: ElementSet
    mode: RelationMode
    is_subgroup: bool

    @property
    def size(self) -> int:
        return self.set.size


def is_closed(G: FiniteGroup, bits: np.ndarray) -> bool:
    idx = np.flatnonzero(bits)
    if not idx.size:
        return False
    return bool(bits[G.table[np.ix_(idx, idx)]].all())


def first_non_closed_pair(G: FiniteGroup, bits: np.ndarray) -> tuple[int, int] | None:
    idx = np.flatnonzero(bits)
    for a in idx:
        bad = ~bits[G.table[a, idx]]
        if bad.any():
            return int(a), int(idx[np.argmax(bad)])
    return None


def pair_related(G: FiniteGroup, i: int, j: int, mode: RelationMode | str = RelationMode.SOLVABLE) -> bool:
    return engine(G, mode).pair_related(i, j)


def sol_of_element(G: FiniteGroup, x: int, mode: RelationMode | str = RelationMode.SOLVABLE,
                   transport: bool = True) -> SolvabilizerResult:
    eng = engine(G, mode)
    bits = eng.sol_mask(x) if transport else eng.sweep(x)
    return SolvabilizerResult(
        set=ElementSet(G, bits),
        ambient=G.full_set(),
        target=ElementSet.from_indices(G, [x]),
        mode=eng.mode,
        is_subgroup=is_closed(G, bits),
    )


def sol_of_set(A: ElementSet, B: ElementSet, mode: RelationMode | str = RelationMode.SOLVABLE) -> SolvabilizerResult:
    G = A.parent
    if B.parent is not G:
        raise ValueError("A and B must lie in the same group")
    if A.size == 0:
        bits = np.zeros(G.order, dtype=bool)
    elif B.size == 0:
        bits = A.bits.copy()
    else:
        M = engine(G, mode).matrix()
        bits = A.bits & M[B.bits].all(axis=0)
    return SolvabilizerResult(ElementSet(G, bits), A, B, RelationMode(mode), is_closed(G, bits))


def solvable_radical(G: FiniteGroup, mode: RelationMode | str = RelationMode.SOLVABLE) -> ElementSet:
    key = ("radical", RelationMode(mode))
    if key not in G.cache:
        G.cache[key] = ElementSet(G, engine(G, mode).matrix().all(axis=0))
    return G.cache[key]


@dataclass
class SGroupReport:
    is_s_group: bool
    witness: tuple[int, int, int] | None = None  # (a, b, x)

    def verify(self, G: FiniteGroup, mode: RelationMode | str = RelationMode.SOLVABLE) -> bool:
        """Recompute the witness subgroups from scratch."""
        if self.witness is None:
            return self.is_s_group
        a, b, x = self.witness
        eng = RelationEngine(G, RelationMode(mode))
        ab = G.mult(a, b)
        return eng.pair_related(a, x) and eng.pair_related(b, x) and not eng.pair_related(ab, x)


def is_s_group(G: FiniteGroup, mode: RelationMode | str = RelationMode.SOLVABLE) -> SGroupReport:
    eng = engine(G, mode)
    ct = conjugacy_classes(G)
    rep_sol = eng.rep_solvabilizers()
    failing = {ct.class_of[r] for r, m in rep_sol.items() if not is_closed(G, m)}
    if not failing:
        return SGroupReport(True)
    x = min(int(i) for i in range(G.order) if ct.class_of[i] in failing)
    a, b = first_non_closed_pair(G, eng.sol_mask(x))
    return SGroupReport(False, (a, b, x))
