import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from solvagraph.elements import MatrixModP, Permutation, TableIndex, det_mod_p, is_prime
from solvagraph.errors import IncompatibleElements, OutOfRange, SingularMatrix

import bruteforce as bf


perms5 = st.permutations(list(range(5))).map(lambda p: Permutation(tuple(p)))


def test_cycle_text_is_one_based():
    p = Permutation.from_cycles([(0, 1, 2)], 5)
    assert str(p) == "(1,2,3)"
    assert p.images == bf.cycle(5, (1, 2, 3))
    assert str(Permutation.identity(4)) == "()"


def test_product_applies_left_factor_first():
    a = Permutation.from_cycles([(0, 1)], 3)
    b = Permutation.from_cycles([(1, 2)], 3)
    # 0 -a-> 1 -b-> 2
    assert (a * b).images[0] == 2
    assert (a * b).images == bf.compose(a.images, b.images)


@given(perms5, perms5, perms5)
def test_permutation_product_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(perms5)
def test_cycles_roundtrip(p):
    again = Permutation.from_cycles(p.cycles(), p.degree)
    assert again == p
    assert again.encode() == p.encode()


def test_bad_permutations():
    with pytest.raises(IncompatibleElements):
        Permutation((0, 0, 1))
    with pytest.raises(OutOfRange):
        Permutation.from_cycles([(0, 7)], 5)
    with pytest.raises(IncompatibleElements):
        Permutation.from_cycles([(0, 1), (1, 2)], 3)
    with pytest.raises(IncompatibleElements):
        Permutation.identity(3) * Permutation.identity(4)


def test_matrix_rendering_and_product():
    m = MatrixModP.from_rows([[1, 1], [0, 1]], 5)
    assert str(m) == "[[1,1],[0,1]]"
    assert (m * m).rows() == [[1, 2], [0, 1]]
    k = m
    for _ in range(4):
        k = k * m
    assert k == MatrixModP.identity(2, 5)


def test_matrix_validation():
    with pytest.raises(OutOfRange):
        MatrixModP.from_rows([[1, 0], [0, 1]], 6)
    with pytest.raises(SingularMatrix):
        MatrixModP.from_rows([[1, 2], [2, 4]], 5)
    with pytest.raises(OutOfRange):
        MatrixModP(5, 2, (5, 0, 0, 1))
    # rows given to from_rows are reduced first
    assert MatrixModP.from_rows([[6, 0], [0, 1]], 5) == MatrixModP.identity(2, 5)
    with pytest.raises(IncompatibleElements):
        MatrixModP.identity(2, 5) * MatrixModP.identity(2, 7)


@given(st.lists(st.integers(0, 6), min_size=9, max_size=9))
def test_det_mod_p_matches_cofactor_expansion(entries):
    m = np.array(entries).reshape(3, 3)
    ref = sum(
        (-1) ** bf.parity(perm) * m[0, perm[0]] * m[1, perm[1]] * m[2, perm[2]]
        for perm in itertools.permutations(range(3))
    )
    assert det_mod_p(m, 7) == ref % 7


def test_is_prime_small_range():
    primes = [n for n in range(60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


def test_table_index_renders_with_hash():
    assert str(TableIndex(7)) == "#7"
    assert TableIndex(3) == TableIndex(3)
