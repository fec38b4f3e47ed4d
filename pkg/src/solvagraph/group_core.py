"""Fully enumerated finite groups backed by a Cayley table.

Elements are addressed by index; index 0 is always the identity.  All
subgroup machinery works on boolean masks over the index space, and the
derived / lower central series are built as normal closures of generator
commutators, so nothing here ever touches all pairs of a subgroup.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .elements import GroupElement, MatrixModP, Permutation, TableIndex
from .errors import CapExceeded, IncompatibleElements, NotASubgroup, NotNormal

DEFAULT_CAP = 10080


def max_order_cap() -> int:
    env = os.environ.get("SOLVAGRAPH_MAX_ORDER")
    return int(env) if env else DEFAULT_CAP


class FiniteGroup:
    """A finite group with elements ``0..order-1`` and a full product table.

    ``table[i, j]`` is the index of ``elements[i] * elements[j]``.  The table
    is read-only once built; derived data (orders, classes) is cached lazily.
    """

    def __init__(
        self,
        elements: list[GroupElement],
        table: np.ndarray,
        generators: Sequence[int],
        label: str = "",
        kind: str = "table",
    ):
        n = len(elements)
        if table.shape != (n, n):
            raise ValueError("table shape does not match element count")
        if n and not np.array_equal(table[0], np.arange(n)):
            raise ValueError("index 0 must be the identity")
        self.elements = elements
        self.table = np.ascontiguousarray(table, dtype=np.intp)
        self.table.flags.writeable = False
        self.inv = np.argmax(self.table == 0, axis=1).astype(np.intp)
        self.inv.flags.writeable = False
        self.generators = [int(g) for g in generators]
        self.label = label
        self.kind = kind
        self.cache: dict = {}
        self._index: dict[bytes, int] | None = None

    @classmethod
    def from_table(cls, table: np.ndarray, label: str = "", generators: Sequence[int] | None = None) -> FiniteGroup:
        table = np.asarray(table)
        elements: list[GroupElement] = [TableIndex(i) for i in range(len(table))]
        G = cls(elements, table, generators or [], label=label, kind="table")
        if generators is None:
            G.generators = generating_set(G, np.ones(G.order, dtype=bool))
        return G

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or self.kind!r}, order={self.order})"

    def mult(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inverse(self, i: int) -> int:
        return int(self.inv[i])

    def index_of(self, element: GroupElement) -> int | None:
        if self._index is None:
            self._index = {e.encode(): k for k, e in enumerate(self.elements)}
        if type(element) is not type(self.elements[0]):
            return None
        return self._index.get(element.encode())

    def render(self, i: int) -> str:
        return str(self.elements[i])

    def conjugate(self, x: int, g: int) -> int:
        """``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inv[g]])

    def conjugation_map(self, g: int) -> np.ndarray:
        """Array sending every index ``i`` to ``g i g^-1``."""
        return self.table[self.table[g], self.inv[g]]

    def power_map(self, k: int) -> np.ndarray:
        ar = np.arange(self.order)
        cur = np.zeros(self.order, dtype=np.intp)
        for _ in range(k % max(self.exponent, 1)):
            cur = self.table[cur, ar]
        return cur

    @property
    def orders(self) -> np.ndarray:
        if "orders" not in self.cache:
            n = self.order
            ar = np.arange(n)
            out = np.zeros(n, dtype=np.intp)
            cur = ar.copy()
            k = 1
            while (out == 0).any():
                out[(cur == 0) & (out == 0)] = k
                cur = self.table[cur, ar]
                k += 1
            out.flags.writeable = False
            self.cache["orders"] = out
        return self.cache["orders"]

    @property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.orders)) if self.order else 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(self.table[a, b] == self.table[b, a] for a in gens for b in gens)

    def full_set(self) -> ElementSet:
        return ElementSet(self, np.ones(self.order, dtype=bool))

    def identity_set(self) -> ElementSet:
        return ElementSet.from_indices(self, [0])

    def spot_check(self, rng: np.random.Generator, samples: int = 1000) -> bool:
        """Randomised associativity / identity / inverse check."""
        n = self.order
        a, b, c = rng.integers(0, n, size=(3, samples))
        T = self.table
        if not np.array_equal(T[T[a, b], c], T[a, T[b, c]]):
            return False
        ar = np.arange(n)
        return bool(np.array_equal(T[ar, self.inv], np.zeros(n, dtype=np.intp)) and np.array_equal(T[:, 0], ar))


class ElementSet:
    """Subset of one parent group, stored as a boolean mask over indices."""

    __slots__ = ("parent", "bits", "size")

    def __init__(self, parent: FiniteGroup, bits: np.ndarray):
        bits = np.array(bits, dtype=bool)
        if bits.shape != (parent.order,):
            raise ValueError("mask length must equal the parent order")
        bits.flags.writeable = False
        self.parent = parent
        self.bits = bits
        self.size = int(bits.sum())

    @classmethod
    def from_indices(cls, parent: FiniteGroup, indices: Iterable[int]) -> ElementSet:
        bits = np.zeros(parent.order, dtype=bool)
        bits[np.fromiter(indices, dtype=np.intp)] = True
        return cls(parent, bits)

    @classmethod
    def empty(cls, parent: FiniteGroup) -> ElementSet:
        return cls(parent, np.zeros(parent.order, dtype=bool))

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(int(i) for i in self.indices())

    def __contains__(self, i: int) -> bool:
        return bool(self.bits[i])

    def _check(self, other: ElementSet) -> None:
        if other.parent is not self.parent:
            raise IncompatibleElements("element sets belong to different groups")

    def __and__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet(self.parent, self.bits & other.bits)

    def __or__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet(self.parent, self.bits | other.bits)

    def __sub__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet(self.parent, self.bits & ~other.bits)

    def __le__(self, other: ElementSet) -> bool:
        self._check(other)
        return not (self.bits & ~other.bits).any()

    def __ge__(self, other: ElementSet) -> bool:
        return other <= self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return other.parent is self.parent and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())

    def fingerprint(self) -> bytes:
        return hashlib.blake2b(np.packbits(self.bits).tobytes(), digest_size=16).digest()

    def conjugate_by(self, g: int) -> ElementSet:
        """``g S g^-1``."""
        bits = np.zeros(self.parent.order, dtype=bool)
        bits[self.parent.conjugation_map(g)[self.bits]] = True
        return ElementSet(self.parent, bits)

    def __repr__(self) -> str:
        G = self.parent
        shown = ", ".join(G.render(i) for i in self.indices()[:8])
        more = ", ..." if self.size > 8 else ""
        return f"ElementSet(size={self.size}, {{{shown}{more}}})"


@dataclass
class ConjugacyTable:
    class_of: np.ndarray
    representatives: list[int]
    class_sizes: list[int]
    centralizer_orders: list[int]
    # transporter[x] = g with g rep g^-1 = x, rep being x's class representative
    transporter: np.ndarray = field(repr=False)

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == c)

    def __len__(self) -> int:
        return len(self.representatives)


# --- closure ---------------------------------------------------------------

def _row_keys(rows: np.ndarray, base: int) -> np.ndarray | None:
    width = rows.shape[1]
    if width * np.log2(max(base, 2)) >= 62:
        return None
    weights = base ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return rows.astype(np.int64) @ weights


def _build_table(arrays: np.ndarray, compose, base: int) -> np.ndarray:
    """Cayley table from stacked element arrays and a row-wise product."""
    n = len(arrays)
    flat = arrays.reshape(n, -1)
    keys = _row_keys(flat, base)
    table = np.empty((n, n), dtype=np.intp)
    if keys is not None:
        order = np.argsort(keys)
        sorted_keys = keys[order]
        for i in range(n):
            prod_keys = _row_keys(compose(i).reshape(n, -1), base)
            pos = np.searchsorted(sorted_keys, prod_keys)
            table[i] = order[pos]
    else:
        lookup = {row.tobytes(): k for k, row in enumerate(flat)}
        for i in range(n):
            table[i] = [lookup[row.tobytes()] for row in compose(i).reshape(n, -1)]
    return table


def close_generators(
    gens: Sequence[GroupElement],
    cap: int | None = None,
    label: str = "",
    parent: FiniteGroup | None = None,
) -> FiniteGroup:
    """Enumerate the group generated by ``gens`` breadth first.

    Table elements (``TableIndex``) need the ``parent`` group they index into;
    the result is then the generated subgroup re-indexed as its own group.
    """
    cap = max_order_cap() if cap is None else cap
    if not gens:
        raise IncompatibleElements("at least one generator is required")
    kinds = {type(g) for g in gens}
    if len(kinds) != 1:
        raise IncompatibleElements("generators mix element kinds")
    kind = kinds.pop()
    if kind is TableIndex:
        if parent is None:
            raise IncompatibleElements("table elements need their parent group")
        return _close_in_parent(parent, [g.idx for g in gens], cap, label)
    if kind is Permutation:
        if len({g.degree for g in gens}) != 1:
            raise IncompatibleElements("permutation degrees differ")
        ident: GroupElement = Permutation.identity(gens[0].degree)
    else:
        if len({(g.p, g.n) for g in gens}) != 1:
            raise IncompatibleElements("matrix moduli or dimensions differ")
        ident = MatrixModP.identity(gens[0].n, gens[0].p)

    elements: list[GroupElement] = [ident]
    index = {ident.encode(): 0}
    gen_idx = []
    for g in gens:
        key = g.encode()
        if key not in index:
            index[key] = len(elements)
            elements.append(g)
        gen_idx.append(index[key])
    k = 0
    while k < len(elements):
        e = elements[k]
        for g in gens:
            prod = e * g
            key = prod.encode()
            if key not in index:
                if len(elements) >= cap:
                    raise CapExceeded(cap)
                index[key] = len(elements)
                elements.append(prod)
        k += 1

    if kind is Permutation:
        arr = np.array([e.images for e in elements], dtype=np.intp)
        table = _build_table(arr, lambda i: arr[:, arr[i]], arr.shape[1])
        kind_name = "permutation"
    else:
        p = gens[0].p
        arr = np.array([e.as_array() for e in elements], dtype=np.int64)
        table = _build_table(arr, lambda i: np.einsum("ab,jbc->jac", arr[i], arr) % p, p)
        kind_name = "matrix"
    gen_list = sorted({i for i in gen_idx if i != 0})
    G = FiniteGroup(elements, table, gen_list, label=label, kind=kind_name)
    G._index = index
    return G


def _close_in_parent(parent: FiniteGroup, idx: list[int], cap: int, label: str) -> FiniteGroup:
    members = np.flatnonzero(closure_mask(parent, idx))
    if len(members) > cap:
        raise CapExceeded(cap)
    remap = np.full(parent.order, -1, dtype=np.intp)
    remap[members] = np.arange(len(members))
    table = remap[parent.table[np.ix_(members, members)]]
    gens = sorted({int(remap[i]) for i in idx if i != 0})
    G = FiniteGroup([TableIndex(i) for i in range(len(members))], table, gens, label=label)
    G.cache["embedding"] = members
    return G


def closure_mask(G: FiniteGroup, gens: Iterable[int]) -> np.ndarray:
    """Boolean mask of the subgroup generated by ``gens``."""
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    g = np.unique(np.fromiter(gens, dtype=np.intp))
    g = g[g != 0]
    if g.size == 0:
        return mask
    T = G.table
    frontier = np.zeros(1, dtype=np.intp)
    cols = g[None, :]
    while frontier.size:
        nxt = T[frontier[:, None], cols].ravel()
        nxt = nxt[~mask[nxt]]
        if not nxt.size:
            break
        nxt = np.unique(nxt)
        mask[nxt] = True
        frontier = nxt
    return mask


def generating_set(G: FiniteGroup, mask: np.ndarray) -> list[int]:
    """Greedy generators for the subgroup ``mask``; raises if it is not one."""
    if not mask[0]:
        raise NotASubgroup("set does not contain the identity")
    gens: list[int] = []
    span = np.zeros(G.order, dtype=bool)
    span[0] = True
    # high-order elements first keeps the generating set short
    cand = np.flatnonzero(mask)
    cand = cand[np.argsort(-G.orders[cand], kind="stable")]
    for i in cand:
        if span[i]:
            continue
        gens.append(int(i))
        span = closure_mask(G, gens)
        if (span & ~mask).any():
            raise NotASubgroup("set is not closed under multiplication")
    return gens


def subgroup_generated(G: FiniteGroup, indices: Iterable[int]) -> ElementSet:
    return ElementSet(G, closure_mask(G, indices))


def element_order(G: FiniteGroup, i: int) -> int:
    return int(G.orders[i])


def centralizer(G: FiniteGroup, i: int) -> ElementSet:
    return ElementSet(G, G.table[i, :] == G.table[:, i])


def center(G: FiniteGroup) -> ElementSet:
    bits = np.ones(G.order, dtype=bool)
    for g in G.generators:
        bits &= G.table[g, :] == G.table[:, g]
    return ElementSet(G, bits)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyTable:
    if "classes" in G.cache:
        return G.cache["classes"]
    n = G.order
    maps = [(s, G.conjugation_map(s)) for s in G.generators]
    class_of = np.full(n, -1, dtype=np.intp)
    trans = np.zeros(n, dtype=np.intp)
    reps: list[int] = []
    sizes: list[int] = []
    for r in range(n):
        if class_of[r] >= 0:
            continue
        c = len(reps)
        reps.append(r)
        class_of[r] = c
        trans[r] = 0
        frontier = np.array([r], dtype=np.intp)
        size = 1
        while frontier.size:
            found = []
            for s, cmap in maps:
                img = cmap[frontier]
                fresh = class_of[img] < 0
                if fresh.any():
                    img_f, src = img[fresh], frontier[fresh]
                    img_f, first = np.unique(img_f, return_index=True)
                    class_of[img_f] = c
                    trans[img_f] = G.table[s, trans[src[first]]]
                    found.append(img_f)
                    size += len(img_f)
            frontier = np.concatenate(found) if found else np.zeros(0, dtype=np.intp)
        sizes.append(size)
    class_of.flags.writeable = False
    table = ConjugacyTable(class_of, reps, sizes, [n // s for s in sizes], trans)
    G.cache["classes"] = table
    return table


# --- normal closure and series --------------------------------------------

def _normal_closure(G: FiniteGroup, seeds: Iterable[int], ambient_gens: Sequence[int]) -> tuple[np.ndarray, list[int]]:
    """Mask and generators of the normal closure of ``seeds`` in ``<ambient_gens>``."""
    T, inv = G.table, G.inv
    gens = [int(s) for s in dict.fromkeys(seeds) if s != 0]
    mask = closure_mask(G, gens)
    amb = np.asarray(ambient_gens, dtype=np.intp)
    if amb.size == 0:
        return mask, gens
    queue = list(gens)
    while queue:
        x = queue.pop()
        conj = T[T[inv[amb], x], amb]
        for c in conj[~mask[conj]]:
            if not mask[c]:
                gens.append(int(c))
                mask = closure_mask(G, gens)
                queue.append(int(c))
    return mask, gens


def commutator(G: FiniteGroup, a: int, b: int) -> int:
    """``[a, b] = a^-1 b^-1 a b``."""
    T, inv = G.table, G.inv
    return int(T[T[inv[a], inv[b]], T[a, b]])


def _derived_step(G: FiniteGroup, gens: Sequence[int]) -> tuple[np.ndarray, list[int]]:
    comms = [commutator(G, a, b) for k, a in enumerate(gens) for b in gens[k + 1:]]
    return _normal_closure(G, comms, gens)


def _lower_central_step(G: FiniteGroup, h_gens: Sequence[int], n_gens: Sequence[int]) -> tuple[np.ndarray, list[int]]:
    comms = [commutator(G, a, b) for a in h_gens for b in n_gens]
    return _normal_closure(G, comms, h_gens)


def _as_subgroup(H: ElementSet) -> list[int]:
    return generating_set(H.parent, H.bits)


def normal_closure(G: FiniteGroup, S: ElementSet, ambient: ElementSet | None = None) -> ElementSet:
    amb = G.generators if ambient is None else _as_subgroup(ambient)
    mask, _ = _normal_closure(G, S.indices(), amb)
    return ElementSet(G, mask)


def derived_series(H: ElementSet) -> list[ElementSet]:
    G = H.parent
    gens = _as_subgroup(H)
    terms = [H]
    mask = H.bits
    while True:
        nxt, gens = _derived_step(G, gens)
        terms.append(ElementSet(G, nxt))
        if np.array_equal(nxt, mask) or nxt.sum() == 1:
            return terms
        mask = nxt


def lower_central_series(H: ElementSet) -> list[ElementSet]:
    G = H.parent
    h_gens = _as_subgroup(H)
    gens = h_gens
    terms = [H]
    mask = H.bits
    while True:
        nxt, gens = _lower_central_step(G, h_gens, gens)
        terms.append(ElementSet(G, nxt))
        if np.array_equal(nxt, mask) or nxt.sum() == 1:
            return terms
        mask = nxt


def is_solvable(H: ElementSet) -> bool:
    return derived_series(H)[-1].size == 1


def is_nilpotent(H: ElementSet) -> bool:
    return lower_central_series(H)[-1].size == 1


def solvable_by_gens(G: FiniteGroup, gens: Sequence[int], mask: np.ndarray) -> bool:
    """Derived-series solvability test for ``<gens>`` whose mask is known."""
    size = int(mask.sum())
    while size > 1:
        nxt, gens = _derived_step(G, gens)
        nsize = int(nxt.sum())
        if nsize == size:
            return False
        size = nsize
    return True


def nilpotent_by_gens(G: FiniteGroup, gens: Sequence[int], mask: np.ndarray) -> bool:
    size = int(mask.sum())
    h_gens = list(gens)
    cur = h_gens
    while size > 1:
        nxt, cur = _lower_central_step(G, h_gens, cur)
        nsize = int(nxt.sum())
        if nsize == size:
            return False
        size = nsize
    return True


def is_normal(G: FiniteGroup, H: ElementSet) -> bool:
    gens = _as_subgroup(H)
    for g in G.generators:
        cmap = G.conjugation_map(g)
        if not H.bits[cmap[gens]].all():
            return False
    return True


def quotient_group(G: FiniteGroup, N: ElementSet, label: str | None = None) -> tuple[FiniteGroup, np.ndarray]:
    """Quotient ``G/N`` as a table group, plus the projection ``G -> G/N``.

    Cosets are numbered in order of their least element index, which is also
    the representative, so the result is deterministic.
    """
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    n = G.order
    members = N.indices()
    proj = np.full(n, -1, dtype=np.intp)
    reps = []
    for i in range(n):
        if proj[i] < 0:
            proj[G.table[i, members]] = len(reps)
            reps.append(i)
    reps_a = np.asarray(reps, dtype=np.intp)
    table = proj[G.table[np.ix_(reps_a, reps_a)]]
    gens = sorted({int(proj[g]) for g in G.generators} - {0})
    Q = FiniteGroup([TableIndex(i) for i in range(len(reps))], table, gens,
                    label=label if label is not None else f"{G.label}/N")
    Q.cache["coset_reps"] = reps_a
    proj.flags.writeable = False
    return Q, proj
