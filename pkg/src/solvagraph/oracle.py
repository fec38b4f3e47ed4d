"""Slow reference implementations used to cross-check the fast paths.

Nothing here shares code with the solvabilizer sweep: closures are plain
Python sets, derived subgroups are generated by *all* commutator pairs, and
every pair of elements is tested without any orbit or conjugacy reduction.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .group_core import FiniteGroup, closure_mask, conjugacy_classes, is_solvable, ElementSet


class NaiveOracle:
    def __init__(self, G: FiniteGroup):
        self.G = G
        self.T = G.table.tolist()
        self.inv = G.inv.tolist()
        self._solvable: dict[frozenset, bool] = {}
        self._nilpotent: dict[frozenset, bool] = {}

    def closure(self, gens) -> frozenset:
        T = self.T
        gens = list(gens)
        seen = {0}
        queue = deque([0])
        while queue:
            e = queue.popleft()
            row = T[e]
            for g in gens:
                p = row[g]
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        return frozenset(seen)

    def _comm(self, a: int, b: int) -> int:
        T, inv = self.T, self.inv
        return T[T[inv[a]][inv[b]]][T[a][b]]

    def derived(self, H: frozenset) -> frozenset:
        return self.closure({self._comm(a, b) for a in H for b in H})

    def is_solvable(self, H: frozenset) -> bool:
        if H not in self._solvable:
            cur = H
            while len(cur) > 1:
                nxt = self.derived(cur)
                if nxt == cur:
                    break
                cur = nxt
            self._solvable[H] = len(cur) == 1
        return self._solvable[H]

    def is_nilpotent(self, H: frozenset) -> bool:
        if H not in self._nilpotent:
            cur = H
            while len(cur) > 1:
                nxt = self.closure({self._comm(a, b) for a in H for b in cur})
                if nxt == cur:
                    break
                cur = nxt
            self._nilpotent[H] = len(cur) == 1
        return self._nilpotent[H]

    def related(self, i: int, j: int, mode: str = "solvable") -> bool:
        H = self.closure((i, j))
        return self.is_solvable(H) if mode == "solvable" else self.is_nilpotent(H)

    def relation_matrix(self, mode: str = "solvable") -> np.ndarray:
        """All-pairs sweep: ``M[i, j]`` iff ``<i, j>`` is solvable (nilpotent)."""
        n = self.G.order
        M = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in range(i, n):
                M[i, j] = M[j, i] = self.related(i, j, mode)
        return M


def normal_subgroups(G: FiniteGroup) -> list[np.ndarray]:
    """All normal subgroups, as joins of normal closures of conjugacy classes."""
    ct = conjugacy_classes(G)
    seen: dict[bytes, np.ndarray] = {}
    for c in range(len(ct)):
        m = closure_mask(G, ct.members(c))
        seen.setdefault(m.tobytes(), m)
    frontier = list(seen.values())
    base = list(seen.values())
    while frontier:
        nxt = []
        for a in frontier:
            for b in base:
                if (b & ~a).any():
                    m = closure_mask(G, np.flatnonzero(a | b))
                    key = m.tobytes()
                    if key not in seen:
                        seen[key] = m
                        nxt.append(m)
        frontier = nxt
    return sorted(seen.values(), key=lambda m: (int(m.sum()), m.tobytes()))


def radical_oracle(G: FiniteGroup) -> ElementSet:
    """Largest normal solvable subgroup, found among all normal subgroups."""
    solv = [m for m in normal_subgroups(G) if is_solvable(ElementSet(G, m))]
    best = max(solv, key=lambda m: int(m.sum()))
    if any((m & ~best).any() for m in solv):
        raise AssertionError("normal solvable subgroups have no largest member")
    return ElementSet(G, best)
