"""Built-in groups and the textual group-spec language.

Grammar (whitespace-insensitive, cycle points 1-based)::

    spec    := term (("x" | "×") term)*
    term    := catalog | perm | mat
    catalog := ("C" | "D" | "S" | "A") int | ("SL2" | "PSL2") "(" int ")"
             | ("SL" | "PSL") "(" "2" "," int ")"
    perm    := "perm:" cycles (";" cycles)*
    cycles  := "()" | ("(" int ("," int)* ")")+
    mat     := "mat" "p=" int "n=" int ":" matrix (";" matrix)*
    matrix  := "[" row ("," row)* "]"
    row     := "[" int ("," int)* "]"
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .elements import GroupElement, MatrixModP, Permutation, TableIndex, is_prime
from .errors import BadParams, CapExceeded, ElementNotInGroup, OutOfRange, ParseError
from .group_core import FiniteGroup, center, close_generators, max_order_cap, quotient_group


# --- specs -----------------------------------------------------------------

@dataclass(frozen=True)
class CatalogName:
    name: str
    param: int


@dataclass(frozen=True)
class PermGenerators:
    generators: tuple[tuple[tuple[int, ...], ...], ...]  # 0-based cycles per generator

    @property
    def degree(self) -> int:
        return max((a + 1 for g in self.generators for c in g for a in c), default=1)


@dataclass(frozen=True)
class MatrixGenerators:
    p: int
    n: int
    matrices: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple

    def __post_init__(self):
        flat = []
        for f in self.factors:
            flat.extend(f.factors if isinstance(f, DirectProduct) else [f])
        object.__setattr__(self, "factors", tuple(flat))


GroupSpec = CatalogName | PermGenerators | MatrixGenerators | DirectProduct

CATALOG_NAMES = ("C", "D", "S", "A", "SL2", "PSL2")


def format_spec(spec: GroupSpec) -> str:
    if isinstance(spec, CatalogName):
        if spec.name in ("SL2", "PSL2"):
            return f"{spec.name}({spec.param})"
        return f"{spec.name}{spec.param}"
    if isinstance(spec, PermGenerators):
        return "perm: " + "; ".join(_format_cycles(g) for g in spec.generators)
    if isinstance(spec, MatrixGenerators):
        mats = "; ".join("[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in m) + "]" for m in spec.matrices)
        return f"mat p={spec.p} n={spec.n}: {mats}"
    return " x ".join(format_spec(f) for f in spec.factors)


def _format_cycles(cycles) -> str:
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cycles)


class _Parser:
    _catalog = re.compile(
        r"(?:(?P<fam>PSL|SL)\(\s*2\s*,\s*(?P<p1>\d+)\s*\)"
        r"|(?P<fam2>PSL2|SL2)\(\s*(?P<p2>\d+)\s*\)"
        r"|(?P<small>[CDSA])(?P<n>\d+))"
    )

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.pos)

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str) -> None:
        if not self.peek(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self) -> int:
        self.ws()
        m = re.compile(r"-?\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def spec(self) -> GroupSpec:
        terms = [self.term()]
        while True:
            self.ws()
            if self.pos < len(self.text) and self.text[self.pos] in "x×":
                self.pos += 1
                terms.append(self.term())
            else:
                break
        self.ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing text")
        return terms[0] if len(terms) == 1 else DirectProduct(tuple(terms))

    def term(self) -> GroupSpec:
        self.ws()
        if self.peek("perm:"):
            self.pos += len("perm:")
            return self.perm()
        if self.peek("mat"):
            self.pos += len("mat")
            return self.mat()
        m = self._catalog.match(self.text, self.pos)
        if not m:
            raise self.error("expected a catalog name, 'perm:' or 'mat'")
        self.pos = m.end()
        if m.group("small"):
            return CatalogName(m.group("small"), int(m.group("n")))
        if m.group("fam"):
            return CatalogName(m.group("fam") + "2", int(m.group("p1")))
        return CatalogName(m.group("fam2"), int(m.group("p2")))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        out = []
        self.expect("(")
        if self.peek(")"):
            self.pos += 1
            if self.peek("("):
                raise self.error("identity '()' cannot be combined with cycles")
            return ()
        while True:
            pts = [self.integer()]
            while self.peek(","):
                self.pos += 1
                pts.append(self.integer())
            self.expect(")")
            for a in pts:
                if a < 1:
                    raise OutOfRange(f"point {a} is not positive (points are 1-based)")
            if len(set(pts)) != len(pts):
                raise self.error("repeated point inside a cycle")
            if len(pts) > 1:
                out.append(tuple(a - 1 for a in pts))
            if not self.peek("("):
                break
            self.pos += 1
        used = [a for c in out for a in c]
        if len(set(used)) != len(used):
            raise self.error("cycles are not disjoint")
        return tuple(_normalize_cycle(c) for c in sorted(out, key=min))

    def perm(self) -> PermGenerators:
        gens = [self.cycles()]
        while self.peek(";"):
            self.pos += 1
            gens.append(self.cycles())
        return PermGenerators(tuple(gens))

    def matrix(self, n: int, p: int) -> tuple[tuple[int, ...], ...]:
        self.expect("[")
        rows = []
        while True:
            self.expect("[")
            row = [self.integer()]
            while self.peek(","):
                self.pos += 1
                row.append(self.integer())
            self.expect("]")
            rows.append(tuple(v % p for v in row))
            if not self.peek(","):
                break
            self.pos += 1
        self.expect("]")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise self.error(f"matrix is not {n}x{n}")
        return tuple(rows)

    def mat(self) -> MatrixGenerators:
        self.expect("p=")
        p = self.integer()
        if not is_prime(p) or p > 32749:
            raise OutOfRange(f"modulus {p} must be a prime below 32750")
        self.expect("n=")
        n = self.integer()
        if not 1 <= n <= 8:
            raise OutOfRange(f"dimension {n} must lie in 1..8")
        self.expect(":")
        mats = [self.matrix(n, p)]
        while self.peek(";"):
            self.pos += 1
            mats.append(self.matrix(n, p))
        return MatrixGenerators(p, n, tuple(mats))


def _normalize_cycle(c: tuple[int, ...]) -> tuple[int, ...]:
    k = c.index(min(c))
    return c[k:] + c[:k]


def parse_spec(text: str) -> GroupSpec:
    return _Parser(text).spec()


# --- constructors ----------------------------------------------------------

def _cyc(degree: int, *cycles) -> Permutation:
    return Permutation.from_cycles(cycles, degree)


def expected_order(name: str, n: int) -> int:
    if name == "C":
        return n
    if name == "D":
        return 2 * n
    if name == "S":
        return math.factorial(n)
    if name == "A":
        return max(math.factorial(n) // 2, 1)
    if name == "SL2":
        return n * (n * n - 1)
    if name == "PSL2":
        return n * (n * n - 1) // math.gcd(2, n - 1)
    raise BadParams(f"unknown catalog family {name!r}")


def make(name: str, n: int, cap: int | None = None) -> FiniteGroup:
    cap = max_order_cap() if cap is None else cap
    label = format_spec(CatalogName(name, n))
    if name not in CATALOG_NAMES:
        raise BadParams(f"unknown catalog family {name!r}; expected one of {', '.join(CATALOG_NAMES)}")
    if name in ("SL2", "PSL2"):
        if n not in (2, 3, 5, 7):
            raise BadParams(f"{name} needs p in {{2, 3, 5, 7}}, got {n}")
    elif n < 1:
        raise BadParams(f"{name}{n}: parameter must be at least 1")
    elif name in ("S", "A") and n > 7:
        raise BadParams(f"{name}{n}: degree must be at most 7")
    if expected_order(name, n) > cap:
        raise CapExceeded(cap, label)

    if name == "C":
        gens = [_cyc(n, tuple(range(n)))] if n > 1 else [Permutation.identity(1)]
    elif name == "D":
        if n == 1:
            gens = [_cyc(2, (0, 1))]
        elif n == 2:
            gens = [_cyc(4, (0, 1)), _cyc(4, (2, 3))]
        else:
            gens = [_cyc(n, tuple(range(n))), Permutation(tuple((-i) % n for i in range(n)))]
    elif name == "S":
        if n == 1:
            gens = [Permutation.identity(1)]
        elif n == 2:
            gens = [_cyc(2, (0, 1))]
        else:
            gens = [_cyc(n, (0, 1)), _cyc(n, tuple(range(n)))]
    elif name == "A":
        gens = [_cyc(n, (0, 1, k)) for k in range(2, n)] or [Permutation.identity(n)]
    else:
        p = n
        gens = [MatrixModP.from_rows([[1, 1], [0, 1]], p), MatrixModP.from_rows([[0, p - 1], [1, 0]], p)]
    G = close_generators(gens, cap=cap, label=label)
    if name == "PSL2":
        G, _ = quotient_group(G, center(G), label=label)
    return G


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int | None = None, label: str | None = None) -> FiniteGroup:
    """``G x H`` with index ``i * |H| + j`` for the pair ``(i, j)``.

    Permutation factors act on disjoint point sets, matrix factors over the
    same prime become block-diagonal; anything else is a table group.
    """
    cap = max_order_cap() if cap is None else cap
    n, m = G.order, H.order
    if n * m > cap:
        raise CapExceeded(cap, "direct product")
    table = (G.table[:, None, :, None] * m + H.table[None, :, None, :]).reshape(n * m, n * m)
    if G.kind == H.kind == "permutation":
        d = G.elements[0].degree
        elements: list[GroupElement] = [
            Permutation(g.images + tuple(d + a for a in h.images)) for g in G.elements for h in H.elements
        ]
        kind = "permutation"
    elif G.kind == H.kind == "matrix" and G.elements[0].p == H.elements[0].p:
        p = G.elements[0].p
        elements = []
        for g in G.elements:
            for h in H.elements:
                block = np.zeros((g.n + h.n, g.n + h.n), dtype=np.int64)
                block[:g.n, :g.n] = g.as_array()
                block[g.n:, g.n:] = h.as_array()
                elements.append(MatrixModP.from_rows(block.tolist(), p))
        kind = "matrix"
    else:
        elements = [TableIndex(k) for k in range(n * m)]
        kind = "table"
    gens = [g * m for g in G.generators] + [h for h in H.generators]
    P = FiniteGroup(elements, table, sorted(set(gens)), label=label or f"{G.label} x {H.label}", kind=kind)
    P.cache["factors"] = (G, H)
    return P


def product_projections(P: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    G, H = P.cache["factors"]
    idx = np.arange(P.order)
    return idx // H.order, idx % H.order


def product_injections(P: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    G, H = P.cache["factors"]
    return np.arange(G.order) * H.order, np.arange(H.order)


def build(spec: GroupSpec | str, cap: int | None = None) -> FiniteGroup:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    cap = max_order_cap() if cap is None else cap
    label = format_spec(spec)
    if isinstance(spec, CatalogName):
        return make(spec.name, spec.param, cap)
    if isinstance(spec, PermGenerators):
        d = spec.degree
        gens = [Permutation.from_cycles(g, d) for g in spec.generators]
        return close_generators(gens, cap=cap, label=label)
    if isinstance(spec, MatrixGenerators):
        gens = [MatrixModP.from_rows(m, spec.p) for m in spec.matrices]
        return close_generators(gens, cap=cap, label=label)
    G = build(spec.factors[0], cap)
    for f in spec.factors[1:]:
        G = direct_product(G, build(f, cap), cap)
    G.label = label
    return G


def parse_element(G: FiniteGroup, text: str) -> int:
    """Index of the element written as cycles, a matrix, or ``#k``."""
    text = text.strip()
    try:
        if G.kind == "permutation":
            p = _Parser(text)
            cycles = p.cycles()
            p.ws()
            if p.pos != len(text):
                raise p.error("unexpected trailing text")
            d = G.elements[0].degree
            if any(a >= d for c in cycles for a in c):
                raise ElementNotInGroup(f"{text} moves points beyond degree {d}")
            el: GroupElement = Permutation.from_cycles(cycles, d)
        elif G.kind == "matrix":
            e0 = G.elements[0]
            p = _Parser(text)
            el = MatrixModP.from_rows(p.matrix(e0.n, e0.p), e0.p)
        else:
            m = re.fullmatch(r"#(\d+)", text)
            if not m:
                raise ParseError("table elements are written #k", 0)
            k = int(m.group(1))
            if k >= G.order:
                raise ElementNotInGroup(f"{text} is outside the group of order {G.order}")
            return k
    except (ParseError, OutOfRange):
        raise
    except ValueError as exc:
        raise ElementNotInGroup(str(exc)) from exc
    idx = G.index_of(el)
    if idx is None:
        raise ElementNotInGroup(f"{text} is not an element of {G.label}")
    return idx


# --- manifest --------------------------------------------------------------

@dataclass(frozen=True)
class ManifestEntry:
    spec: str
    order: int
    solvable: bool
    nilpotent: bool


MANIFEST: tuple[ManifestEntry, ...] = tuple(
    ManifestEntry(*row) for row in [
        ("C1", 1, True, True), ("C2", 2, True, True), ("C3", 3, True, True), ("C4", 4, True, True),
        ("C5", 5, True, True), ("C6", 6, True, True), ("C7", 7, True, True), ("C8", 8, True, True),
        ("C12", 12, True, True),
        ("D3", 6, True, False), ("D4", 8, True, True), ("D5", 10, True, False), ("D6", 12, True, False),
        ("D8", 16, True, True),
        ("S1", 1, True, True), ("S2", 2, True, True), ("S3", 6, True, False), ("S4", 24, True, False),
        ("S5", 120, False, False), ("S6", 720, False, False), ("S7", 5040, False, False),
        ("A1", 1, True, True), ("A2", 1, True, True), ("A3", 3, True, True), ("A4", 12, True, False),
        ("A5", 60, False, False), ("A6", 360, False, False), ("A7", 2520, False, False),
        ("SL2(2)", 6, True, False), ("SL2(3)", 24, True, False), ("SL2(5)", 120, False, False),
        ("SL2(7)", 336, False, False),
        ("PSL2(2)", 6, True, False), ("PSL2(3)", 12, True, False), ("PSL2(5)", 60, False, False),
        ("PSL2(7)", 168, False, False),
        ("C2 x C2", 4, True, True), ("C2 x C3", 6, True, True), ("S3 x C3", 18, True, False),
        ("S3 x S3", 36, True, False), ("A4 x C2", 24, True, False), ("A5 x C2", 120, False, False),
    ]
)


def catalog(max_order: int = 720) -> list[ManifestEntry]:
    return [e for e in MANIFEST if e.order <= max_order]
