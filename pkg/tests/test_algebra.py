from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_signatures, signatures
from oracles import in_so_oracle, is_independent, so_dimension_oracle
from sopq.algebra import (
    LinearForm,
    abelian_a,
    cartan_involution,
    cartan_split,
    centralizer,
    is_member,
    standard_basis_so,
)
from sopq.basis_index import Signature
from sopq.matrix import bracket
from sopq.roots import m_basis


@pytest.mark.parametrize("sig", all_signatures(2, 7), ids=str)
def test_standard_basis_is_a_basis_of_so(sig):
    basis = standard_basis_so(sig)
    assert len(basis) == sig.dim_so == so_dimension_oracle(sig)
    assert is_independent(basis)
    assert all(is_member(sig, x) and in_so_oracle(sig, x) for x in basis)


@pytest.mark.parametrize("sig", all_signatures(2, 6), ids=str)
def test_closed_under_bracket_and_jacobi(sig):
    basis = standard_basis_so(sig)
    for x, y in combinations(basis, 2):
        assert is_member(sig, bracket(x, y))
    triples = list(combinations(basis, 3))[:200]
    for x, y, z in triples:
        j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        assert j.is_zero()


@pytest.mark.parametrize("sig", all_signatures(2, 7), ids=str)
def test_cartan_decomposition(sig):
    split = cartan_split(sig)
    p, q = sig.p, sig.q
    assert len(split.k_basis) == (p * (p - 1) + q * (q - 1)) // 2
    assert len(split.p_basis) == p * q
    for x in split.k_basis:
        assert cartan_involution(x) == x
    for x in split.p_basis:
        assert cartan_involution(x) == -x
    k, pp = split.k_basis, split.p_basis
    for x, y in combinations(k, 2):
        assert cartan_involution(bracket(x, y)) == bracket(x, y)
    for x in k:
        for y in pp:
            assert cartan_involution(bracket(x, y)) == -bracket(x, y)
    for x, y in combinations(pp, 2):
        assert cartan_involution(bracket(x, y)) == bracket(x, y)


@pytest.mark.parametrize("sig", all_signatures(2, 7), ids=str)
def test_a_is_maximal_abelian_in_p(sig):
    a = abelian_a(sig)
    assert len(a.generators) == sig.q
    split = cartan_split(sig)
    assert all(cartan_involution(g) == -g for g in a.generators)
    if sig.q:
        assert len(centralizer(split.p_basis, a.generators)) == sig.q
        m = centralizer(split.k_basis, a.generators)
        r = sig.p - sig.q
        assert len(m) == r * (r - 1) // 2
        assert all(bracket(x, g).is_zero() for x in m_basis(sig) for g in a.generators)


def test_a_element():
    a = abelian_a(Signature(4, 2))
    f = a.element([1, 2])
    assert f == a.generators[0] + a.generators[1].scale(2)
    with pytest.raises(ValueError):
        a.element([1])


forms = st.integers(1, 4).flatmap(lambda q: st.lists(st.integers(-3, 3), min_size=q, max_size=q)).map(
    lambda c: LinearForm(tuple(c)))


@given(forms)
def test_label_parse_roundtrip(f):
    assert LinearForm.parse(f.label(), len(f.coeffs)) == f


@given(forms, st.data())
def test_form_arithmetic(f, data):
    g = LinearForm(tuple(data.draw(st.integers(-3, 3)) for _ in f.coeffs))
    a = [data.draw(st.integers(-5, 5)) for _ in f.coeffs]
    assert (f + g)(a) == f(a) + g(a)
    assert (f - g)(a) == f(a) - g(a)
    assert (f - f).is_zero()


def test_form_kinds_and_labels():
    assert LinearForm.pair(3, 1, 1, 3, -1).kind() == "±f_i∓f_j"
    assert LinearForm.pair(3, 1, -1, 2, -1).label() == "-f_1-f_2"
    assert LinearForm.basis(2, 2, -2).label() == "-2f_2"
    assert LinearForm.basis(2, 2, -2).kind() == "±2f_i"
    assert LinearForm((3, 0)).kind() == "other"
    assert LinearForm.zero(2).label() == "0"
    assert LinearForm.pair(2, 1, 1, 2, 1).support == (1, 2)
    with pytest.raises(ValueError):
        LinearForm.parse("f_1*2", 2)
    with pytest.raises(ValueError):
        LinearForm.basis(2, 1)([1, 2, 3])


@given(signatures(2, 6))
def test_membership_agrees_with_oracle_on_units(sig):
    # every E_{rc} and E_{rc} - E_{cr}
    from sopq.basis_index import standard_basis

    for r in range(1, sig.d + 1):
        for c in range(1, sig.d + 1):
            for x in (standard_basis(sig, r, c), standard_basis(sig, r, c) - standard_basis(sig, c, r)):
                assert is_member(sig, x) == in_so_oracle(sig, x)
