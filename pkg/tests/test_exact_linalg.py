from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from sopq.exact_linalg import (
    DimensionMismatch,
    IncrementalSpan,
    VectorSpaceBasis,
    extend_span,
    in_span,
    kernel,
    linear_relations,
    rank,
    solve_commutant,
)
from sopq.matrix import Matrix

entries = st.one_of(st.integers(-4, 4), st.fractions(min_value=-3, max_value=3, max_denominator=4))


def int_matrix(rows, cols):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(st.integers(1, 5).flatmap(lambda n: int_matrix(n, 5)))
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@given(st.integers(1, 5).flatmap(lambda n: int_matrix(n, 6)))
def test_kernel_matches_sympy(rows):
    k = kernel(rows, 6)
    assert k.dim == 6 - sympy.Matrix(rows).rank()
    for v in k.vectors:
        for r in rows:
            assert sum(Fraction(a) * b for a, b in zip(r, v)) == 0


@given(int_matrix(4, 5))
def test_canonical_basis_is_rref(rows):
    b = VectorSpaceBasis.span(5, rows)
    rref, _ = sympy.Matrix(rows).rref()
    expected = [tuple(Fraction(int(x.p), int(x.q)) for x in rref.row(i)) for i in range(b.dim)]
    assert list(b.vectors) == expected


@given(int_matrix(3, 4), st.permutations(range(3)))
def test_span_independent_of_order(rows, perm):
    assert VectorSpaceBasis.span(4, rows) == VectorSpaceBasis.span(4, [rows[i] for i in perm])


@given(int_matrix(3, 4), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_membership_and_coordinates(rows, coeffs):
    b = VectorSpaceBasis.span(4, rows)
    v = [sum(c * Fraction(r[k]) for c, r in zip(coeffs, rows)) for k in range(4)]
    assert in_span(v, b)
    coords = b.coordinates(v)
    recon = [sum(c * w[k] for c, w in zip(coords, b.vectors)) for k in range(4)]
    assert recon == v


@given(int_matrix(4, 4))
def test_linear_relations_annihilate(rows):
    rels = linear_relations(rows)
    assert len(rels) == len(rows) - rank(rows)
    for rel in rels:
        assert all(sum(c * Fraction(rows[k][j]) for k, c in rel.items()) == 0 for j in range(4))


def test_extend_and_sparse_input():
    b = VectorSpaceBasis.span(3, [[1, 1, 0]])
    assert not in_span({2: 1}, b)
    b2 = extend_span(b, {2: Fraction(1, 3)})
    assert b2.dim == 2 and b2.contains([1, 1, 5])
    assert rank([{0: 1}, {0: 2}, {1: -1}]) == 2


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        rank([[1, 2], [1, 2, 3]])
    with pytest.raises(DimensionMismatch):
        VectorSpaceBasis.span(2, [[1, 2, 3]])
    with pytest.raises(DimensionMismatch):
        solve_commutant([Matrix.identity(2), Matrix.identity(3)])


def test_coordinates_outside_span():
    with pytest.raises(ValueError):
        VectorSpaceBasis.span(2, [[1, 0]]).coordinates([0, 1])


def test_commutant_examples():
    # a single Jordan block: commutant is polynomials in it
    j = Matrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert len(solve_commutant([j])) == 3
    # diagonal with distinct eigenvalues
    assert len(solve_commutant([Matrix.from_rows([[1, 0], [0, 2]])])) == 2
    # rotation generator: commutant is C
    assert len(solve_commutant([Matrix.from_rows([[0, -1], [1, 0]])])) == 2
    # no operators: everything commutes
    assert len(solve_commutant([], n=2)) == 4


@given(int_matrix(3, 3), int_matrix(3, 3))
def test_commutant_matches_brute_kernel(a, b):
    mats = [Matrix.from_rows(a), Matrix.from_rows(b)]
    n = 3
    rows = []
    for m in mats:
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[i * n + k] += m[k, j]
                    row[k * n + j] -= m[i, k]
                rows.append(row)
    assert solve_commutant(mats) == kernel(rows, n * n)


def test_incremental_span():
    s = IncrementalSpan(3)
    assert s.add([1, 0, 0]) and not s.add({0: 5})
    assert s.add([0, 1, 1]) and s.dim == 2
    assert s.contains([2, 3, 3]) and not s.contains([0, 0, 1])
    assert s.basis() == VectorSpaceBasis.span(3, [[1, 0, 0], [0, 1, 1]])
