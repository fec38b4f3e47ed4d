import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from solvagraph.catalog import (
    MANIFEST,
    CatalogName,
    DirectProduct,
    MatrixGenerators,
    PermGenerators,
    build,
    catalog,
    direct_product,
    expected_order,
    format_spec,
    make,
    parse_element,
    parse_spec,
    product_injections,
    product_projections,
)
from solvagraph.errors import BadParams, CapExceeded, ElementNotInGroup, OutOfRange, ParseError
from solvagraph.group_core import center, is_nilpotent, is_solvable
from solvagraph.solvabilizer import solvable_radical

from conftest import group


@pytest.mark.parametrize("entry", [e for e in MANIFEST if e.order <= 720], ids=lambda e: e.spec)
def test_manifest_entry(entry):
    G = group(entry.spec)
    assert G.order == entry.order
    assert is_solvable(G.full_set()) == entry.solvable
    assert is_nilpotent(G.full_set()) == entry.nilpotent
    assert G.spot_check(np.random.default_rng(0), samples=300)


def test_order_formulas():
    for n in range(1, 7):
        assert make("S", n).order == math.factorial(n)
        assert make("A", n).order == max(math.factorial(n) // 2, 1)
    for n in range(1, 10):
        assert make("D", n).order == 2 * n
        assert make("C", n).order == n
    for p in (2, 3, 5, 7):
        assert make("SL2", p).order == p * (p * p - 1) == expected_order("SL2", p)
        assert make("PSL2", p).order == p * (p * p - 1) // math.gcd(2, p - 1)


def test_make_examples():
    assert make("A", 5).order == 60
    D4 = make("D", 4)
    assert D4.order == 8 and is_solvable(D4.full_set()) and is_nilpotent(D4.full_set())
    P = make("PSL2", 7)
    assert P.order == 168 and not is_solvable(P.full_set())
    assert P.kind == "table"
    assert center(P).size == 1


def test_make_rejects_bad_params():
    with pytest.raises(BadParams):
        make("Q", 3)
    with pytest.raises(BadParams):
        make("SL2", 11)
    with pytest.raises(BadParams):
        make("C", 0)
    with pytest.raises(BadParams):
        make("S", 9)
    with pytest.raises(CapExceeded):
        make("S", 7, cap=1000)


def test_direct_product_examples(A5):
    P = build("A5 x C2")
    assert P.order == 120
    R = solvable_radical(P)
    _, inj_h = product_injections(P)
    assert R.size == 2 and set(R) == set(inj_h.tolist())
    C6 = build("C2 x C3")
    assert C6.order == 6 and C6.is_abelian() and int(C6.orders.max()) == 6
    assert build("A5 x C1").order == 60


def test_direct_product_is_componentwise(A5, S3):
    P = direct_product(A5, S3)
    pg, ph = product_projections(P)
    T = P.table
    assert np.array_equal(pg[T], A5.table[pg[:, None], pg[None, :]])
    assert np.array_equal(ph[T], S3.table[ph[:, None], ph[None, :]])
    assert P.kind == "permutation"


def test_direct_product_of_mixed_kinds_is_a_table_group(SL25, S3):
    P = direct_product(SL25, S3)
    assert P.kind == "table" and P.order == 720


def test_direct_product_cap(A5):
    with pytest.raises(CapExceeded):
        direct_product(A5, A5, cap=1000)


# --- parsing ---------------------------------------------------------------

def test_parse_examples():
    assert parse_spec("A5") == CatalogName("A", 5)
    assert parse_spec("SL(2,5)") == parse_spec("SL2(5)") == CatalogName("SL2", 5)
    spec = parse_spec("perm: (1,2,3,4,5); (1,2,3)")
    assert isinstance(spec, PermGenerators)
    assert spec.degree == 5 and len(spec.generators) == 2
    m = parse_spec("mat p=5 n=2: [[1,1],[0,1]]; [[0,4],[1,0]]")
    assert isinstance(m, MatrixGenerators) and m.p == 5
    assert build(m).order == 120
    assert build(spec).order == 60


def test_product_separators():
    a = parse_spec("A5 x C2")
    b = parse_spec("A5×C2")
    assert a == b == DirectProduct((CatalogName("A", 5), CatalogName("C", 2)))
    assert len(parse_spec("C2 x C2 x C3").factors) == 3


@pytest.mark.parametrize("text, pos", [("A5 x", 4), ("perm: (1,2", 10), ("B7", 0), ("A5 junk", 3)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_spec(text)
    assert info.value.position == pos


def test_out_of_range_inputs():
    with pytest.raises(OutOfRange):
        parse_spec("perm: (0,1)")
    with pytest.raises(OutOfRange):
        parse_spec("mat p=6 n=2: [[1,0],[0,1]]")
    with pytest.raises(OutOfRange):
        parse_spec("mat p=5 n=9: [[1]]")
    with pytest.raises(ParseError):
        parse_spec("perm: (1,2)(2,3)")


cycle_strategy = st.lists(st.integers(1, 7), min_size=2, max_size=5, unique=True)
perm_text = st.lists(cycle_strategy, min_size=1, max_size=3).map(
    lambda cs: "".join("(" + ",".join(map(str, c)) + ")" for c in cs))


@st.composite
def specs(draw):
    kind = draw(st.sampled_from(["cat", "perm", "mat", "prod"]))
    if kind == "cat":
        name = draw(st.sampled_from(["C", "D", "S", "A", "SL2", "PSL2"]))
        return CatalogName(name, draw(st.sampled_from([2, 3, 5, 7])))
    if kind == "perm":
        gens = draw(st.lists(perm_text.filter(_disjoint), min_size=1, max_size=3))
        return parse_spec("perm: " + "; ".join(gens))
    if kind == "mat":
        p = draw(st.sampled_from([2, 3, 5, 7, 11]))
        rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=2, max_size=2), min_size=2, max_size=2))
        return MatrixGenerators(p, 2, (tuple(tuple(r) for r in rows),))
    return DirectProduct((CatalogName("C", 2), CatalogName("A", draw(st.integers(1, 6)))))


def _disjoint(text):
    pts = [int(a) for a in text.replace("(", ",").replace(")", ",").split(",") if a]
    return len(pts) == len(set(pts))


@given(specs())
def test_format_then_parse_roundtrip(spec):
    text = format_spec(spec)
    again = parse_spec(text)
    assert again == spec
    assert format_spec(again) == text


def test_catalog_filter():
    names = [e.spec for e in catalog(720)]
    assert "S6" in names and "A7" not in names
    assert all(e.order <= 120 for e in catalog(120))


# --- elements by text -------------------------------------------------------

def test_parse_element_kinds(A5, SL25):
    i = parse_element(A5, "(1,2,3)")
    assert str(A5.elements[i]) == "(1,2,3)"
    assert parse_element(A5, "()") == 0
    j = parse_element(SL25, "[[1,1],[0,1]]")
    assert SL25.render(j) == "[[1,1],[0,1]]"
    P = make("PSL2", 5)
    assert parse_element(P, "#7") == 7


def test_parse_element_rejects_foreign_elements(A5, SL25):
    with pytest.raises(ElementNotInGroup):
        parse_element(A5, "(1,2)")
    with pytest.raises(ElementNotInGroup):
        parse_element(A5, "(1,6)")
    with pytest.raises(ElementNotInGroup):
        parse_element(SL25, "[[2,0],[0,2]]")
    with pytest.raises(ElementNotInGroup):
        parse_element(make("PSL2", 5), "#60")
    with pytest.raises(ParseError):
        parse_element(A5, "1,2,3")
