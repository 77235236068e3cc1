from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sopq.matrix import Matrix, bracket, format_scalar, linear_combination

small = st.integers(-3, 3)


def matrices(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix.from_rows)


def test_from_rows_roundtrip():
    rows = [[1, 0, Fraction(1, 2)], [0, 0, 0], [-3, 2, 0]]
    m = Matrix.from_rows(rows)
    assert m.rows() == [[Fraction(x) for x in r] for r in rows]
    assert m.nnz() == 4
    assert Matrix.from_flat(3, m.flatten()) == m


def test_zero_entries_are_not_stored():
    m = Matrix(2, {(0, 0): 0, (1, 1): 2})
    assert m.nnz() == 1
    assert m == Matrix(2, {(1, 1): 2})
    assert hash(m) == hash(Matrix(2, {(1, 1): 2}))


def test_size_mismatch_raises():
    with pytest.raises(ValueError):
        Matrix.identity(2) + Matrix.identity(3)
    with pytest.raises(ValueError):
        Matrix.identity(2) @ Matrix.identity(3)


def test_format_scalar():
    assert format_scalar(Fraction(3)) == "3"
    assert format_scalar(Fraction(-1, 2)) == "-1/2"
    assert format_scalar(0) == "0"


@given(matrices(3), matrices(3), matrices(3))
def test_product_associative_and_distributive(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c


@given(matrices(3), matrices(3))
def test_transpose_and_trace(a, b):
    assert (a @ b).T == b.T @ a.T
    assert (a @ b).trace() == (b @ a).trace()
    assert bracket(a, b).trace() == 0


@given(matrices(3), matrices(3), matrices(3))
def test_bracket_jacobi(x, y, z):
    j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert j.is_zero()


@given(matrices(2), matrices(2), small)
def test_linear_combination(a, b, c):
    assert linear_combination([(c, a), (1, b)], 2) == a.scale(c) + b
