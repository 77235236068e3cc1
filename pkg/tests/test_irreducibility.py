from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_signatures, signatures
from oracles import brute_closure_dim, brute_generated_dim
from sopq.algebra import standard_basis_so
from sopq.basis_index import Signature, block_combination
from sopq.irreducibility import (
    analyze_module,
    commutant_certificate,
    generated_subalgebra_dim,
    generation_check,
    invariant_closure,
    ladder_certificate,
    restricted_operators,
    two_piece_decomposition,
)
from sopq.matrix import Matrix
from sopq.weights import complement_basis, weight_vector_double


def s_elements(sig_strategy):
    """A signature together with a nonzero integer combination of s-basis elements."""
    def build(sig):
        basis = complement_basis(sig).basis
        coeffs = st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)).filter(any)
        return coeffs.map(lambda c: (sig, sum((b.scale(k) for b, k in zip(basis, c)), Matrix(sig.d))))
    return sig_strategy.flatmap(build)


@given(s_elements(signatures(2, 5)))
def test_closure_matches_brute_force(pair):
    sig, x = pair
    trace = invariant_closure(sig, x)
    assert trace.final_dim == brute_closure_dim(standard_basis_so(sig), x)
    assert trace.final_dim == len(trace.basis)
    assert [s.dim for s in trace.steps] == list(range(2, trace.final_dim + 1))


def test_closure_rejects_bad_seeds():
    sig = Signature(3, 1)
    with pytest.raises(ValueError):
        invariant_closure(sig, Matrix(4))
    with pytest.raises(ValueError):
        invariant_closure(sig, standard_basis_so(sig)[0])


def test_closure_of_weight_line_in_1_1():
    sig = Signature(1, 1)
    x = weight_vector_double(sig, 1, 1)
    assert invariant_closure(sig, x).final_dim == 1


def test_restricted_operators_rejects_non_invariant_span():
    sig = Signature(2, 1)
    with pytest.raises(ValueError):
        restricted_operators(standard_basis_so(sig), [complement_basis(sig).basis[0]])


@pytest.mark.parametrize("sig", [s for s in all_signatures(3, 7)], ids=str)
def test_commutant_scalar_when_semisimple(sig):
    cert = commutant_certificate(sig)
    assert cert.semisimple
    assert cert.commutant_dim == 1 and cert.irreducible is True


@pytest.mark.parametrize("pq", [(2, 0), (1, 1)])
def test_commutant_abelian_cases_are_not_certified(pq):
    cert = commutant_certificate(Signature(*pq))
    assert not cert.semisimple and cert.irreducible is None
    assert cert.commutant_dim == 2


@pytest.mark.parametrize("pq,s_verdict,so_verdict", [
    ((2, 0), "irreducible", "irreducible"),
    ((1, 1), "reducible", "irreducible"),
    ((2, 1), "irreducible", "irreducible"),
    ((3, 1), "irreducible", "irreducible"),
    ((2, 2), "irreducible", "reducible"),
    ((4, 0), "irreducible", "reducible"),
    ((4, 2), "irreducible", "irreducible"),
])
def test_two_piece_verdicts(pq, s_verdict, so_verdict):
    rep = two_piece_decomposition(Signature(*pq))
    assert rep.direct_sum_ok
    assert rep.s_module.verdict == s_verdict
    assert rep.so_module.verdict == so_verdict


def test_so_2_2_anomaly_is_reported():
    rep = two_piece_decomposition(Signature(2, 2))
    assert rep.so_module.witness_dim == 3
    assert any("not ad(so(2,2))-irreducible" in n for n in rep.notes)


def test_analyze_module_on_known_reducible_span():
    # so(4) = so(3) + so(3)
    sig = Signature(4, 0)
    mod = analyze_module(sig, "so", standard_basis_so(sig))
    assert mod.verdict == "reducible" and mod.witness_dim == 3


@pytest.mark.parametrize("pq", [(4, 2), (3, 2), (2, 1), (2, 2), (3, 3)])
def test_ladder_edges_verified_and_connected(pq):
    cert = ladder_certificate(Signature(*pq))
    assert cert.edges_verified and cert.connected and cert.ok
    for e in cert.edges:
        assert e.nonzero and e.in_target_space


def test_ladder_example_edge_4_2():
    cert = ladder_certificate(Signature(4, 2))
    edge = next(e for e in cert.edges if (e.source, e.target) == ("S(2f_1)", "S(f_1+f_2)"))
    assert edge.root == "H(-f_1+f_2)" and edge.verified
    assert edge.scalar == Fraction(-2)


def test_listed_edges_alone_do_not_connect():
    cert = ladder_certificate(Signature(4, 2), complete=False)
    assert cert.edges_verified and cert.listed_components == cert.components > 1


def test_ladder_1_1_is_disconnected():
    cert = ladder_certificate(Signature(1, 1))
    assert not cert.connected


def test_ladder_needs_q():
    with pytest.raises(ValueError):
        ladder_certificate(Signature(3, 0))


@pytest.mark.parametrize("pq", [(2, 1), (2, 0), (1, 1)])
def test_generation_matches_brute_force(pq):
    sig = Signature(*pq)
    so = standard_basis_so(sig)
    for x in complement_basis(sig).basis:
        full = brute_generated_dim(so + [x]) == sig.d ** 2 - 1
        assert generation_check(sig, x) == full


def test_generated_subalgebra_of_so_is_so():
    sig = Signature(3, 1)
    assert generated_subalgebra_dim(standard_basis_so(sig)) == sig.dim_so


def test_generation_check_errors():
    sig = Signature(2, 1)
    with pytest.raises(ValueError):
        generation_check(sig, Matrix.identity(3))
    with pytest.raises(ValueError):
        generation_check(sig, Matrix(3))
    with pytest.raises(ValueError):
        generation_check(sig, standard_basis_so(sig)[0])
    with pytest.raises(ValueError):
        generation_check(sig, Matrix(4))


def test_generation_of_diagonal_element_4_2():
    sig = Signature(4, 2)
    x = block_combination(sig, [(1, "A", 1, 1), (-1, "A", 2, 2)])
    assert generation_check(sig, x)
