"""Concrete group elements: permutations, matrices mod p, and table indices.

Every element has a canonical byte encoding (``encode``) which is injective
within its kind, and a human-readable rendering (``str``).  Permutations are
multiplied left to right, ``(a * b)(k) = b(a(k))``, the same convention as
GAP and the 1-based cycle notation used in user-facing text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import IncompatibleElements, OutOfRange, SingularMatrix


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise IncompatibleElements(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-based cycles, e.g. ``[(0, 1, 2)]``."""
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for k, a in enumerate(cyc):
                if not 0 <= a < degree:
                    raise OutOfRange(f"point {a + 1} outside 1..{degree}")
                if a in seen:
                    raise IncompatibleElements(f"point {a + 1} repeated in cycles")
                seen.add(a)
                images[a] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its least point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def encode(self) -> bytes:
        return bytes(self.images) if self.degree < 256 else np.asarray(self.images, np.uint32).tobytes()

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise IncompatibleElements("permutation degrees differ")
        return Permutation(tuple(other.images[a] for a in self.images))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cyc)


@dataclass(frozen=True)
class MatrixModP:
    p: int
    n: int
    entries: tuple[int, ...]  # row-major

    def __post_init__(self):
        if not is_prime(self.p):
            raise OutOfRange(f"modulus {self.p} is not prime")
        if len(self.entries) != self.n * self.n:
            raise IncompatibleElements("matrix entry count does not match dimension")
        if any(not 0 <= e < self.p for e in self.entries):
            raise OutOfRange(f"matrix entries must lie in [0, {self.p})")
        if det_mod_p(self.as_array(), self.p) == 0:
            raise SingularMatrix(f"matrix {self} is singular mod {self.p}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> MatrixModP:
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise IncompatibleElements("matrix must be square")
        return cls(p, n, tuple(int(v) % p for r in rows for v in r))

    @classmethod
    def identity(cls, n: int, p: int) -> MatrixModP:
        return cls(p, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.n:(i + 1) * self.n]) for i in range(self.n)]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.int64).reshape(self.n, self.n)

    def encode(self) -> bytes:
        return np.asarray(self.entries, dtype=np.uint16).tobytes()

    def __mul__(self, other: MatrixModP) -> MatrixModP:
        if (self.p, self.n) != (other.p, other.n):
            raise IncompatibleElements("matrix modulus or dimension differ")
        prod = (self.as_array() @ other.as_array()) % self.p
        return MatrixModP(self.p, self.n, tuple(int(v) for v in prod.ravel()))

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows()) + "]"


@dataclass(frozen=True)
class TableIndex:
    idx: int

    def encode(self) -> bytes:
        return int(self.idx).to_bytes(4, "little")

    def __str__(self) -> str:
        return f"#{self.idx}"


GroupElement = Permutation | MatrixModP | TableIndex


def det_mod_p(m: np.ndarray, p: int) -> int:
    """Determinant of an integer matrix modulo a prime, by Gaussian elimination."""
    a = np.array(m, dtype=np.int64) % p
    n = a.shape[0]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r, c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = -det
        det = det * int(a[c, c]) % p
        inv = pow(int(a[c, c]), -1, p)
        for r in range(c + 1, n):
            f = a[r, c] * inv % p
            a[r] = (a[r] - f * a[c]) % p
    return det % p
