import random

import pytest
from hypothesis import given, settings

from helpers import E, I, M, random_space, span, spaces, square_spaces
from reflexop.exact import Matrix
from reflexop.opspace import (
    OperatorSpace,
    a_algebra,
    adjoint_space,
    annihilator,
    b_algebra,
    check_prop23,
    commutant,
    complement_basis,
    is_algebra,
    membership,
    preannihilator,
    product_span,
)

UPPER2 = span(E(1, 1), E(1, 2), E(2, 2))


def test_membership_examples():
    m = span(I(), E(1, 2))
    assert membership(Matrix.zeros(2, 2), m)
    assert not membership(E(1, 1), m)
    assert membership(I(), m)
    assert E(1, 2) + I() in m


def test_adjoint_examples():
    assert adjoint_space(span(E(1, 2))) == span(E(2, 1))
    d = OperatorSpace.diagonal(3)
    assert adjoint_space(d) == d


@settings(max_examples=40)
@given(spaces())
def test_adjoint_involutive(m):
    assert adjoint_space(adjoint_space(m)) == m


def test_product_examples():
    m = span(I(), E(1, 2))
    assert product_span(OperatorSpace.scalars(2), m) == m
    assert product_span(span(E(1, 2)), span(E(2, 1))) == span(E(1, 1))
    assert product_span(m, OperatorSpace.zero(2, 2)) == OperatorSpace.zero(2, 2)


def test_annihilator_examples():
    assert preannihilator(OperatorSpace.full(2, 2)) == OperatorSpace.zero(2, 2)
    assert preannihilator(OperatorSpace.zero(2, 2)) == OperatorSpace.full(2, 2)
    with pytest.raises(ValueError):
        preannihilator(OperatorSpace.full(2, 3))


def test_biduality_random():
    rng = random.Random(7)
    for _ in range(25):
        m = random_space(rng, 3, 3, 5)
        assert annihilator(preannihilator(m)) == m
        assert preannihilator(m).dim == 9 - m.dim


def test_module_algebra_examples():
    assert a_algebra(OperatorSpace.zero(2, 2)) == OperatorSpace.full(2, 2)
    assert a_algebra(span(I(), E(1, 2))) == span(I(), E(1, 2))
    assert a_algebra(span(E(1, 2))) == UPPER2
    assert b_algebra(OperatorSpace.full(2, 2)) == OperatorSpace.full(2, 2)
    assert b_algebra(span(E(1, 2))) == UPPER2


@settings(max_examples=30, deadline=None)
@given(spaces())
def test_module_algebras_are_unital_algebras(m):
    a, b = a_algebra(m), b_algebra(m)
    assert Matrix.identity(m.dim_h1) in a and Matrix.identity(m.dim_h2) in b
    assert is_algebra(a) and is_algebra(b)
    for t in m.basis:
        assert all(t @ x in m for x in a.basis)
        assert all(x @ t in m for x in b.basis)
    assert adjoint_space(a) == b_algebra(adjoint_space(m))


def test_rectangular_module_algebras():
    m = OperatorSpace.pattern(3, 2, [(0, 0), (0, 1), (1, 2)])
    assert a_algebra(m).shape == (3, 3) and b_algebra(m).shape == (2, 2)


def test_commutant_examples():
    assert commutant(OperatorSpace.full(2, 2)) == OperatorSpace.scalars(2)
    assert commutant(OperatorSpace.scalars(2)) == OperatorSpace.full(2, 2)
    d = OperatorSpace.diagonal(3)
    assert commutant(commutant(d)) == d


def test_prop23_examples():
    rep = check_prop23(OperatorSpace.diagonal(2))
    assert rep.failures() == []
    assert rep.c_star and rep.von_neumann

    rep = check_prop23(span(E(1, 2)))
    assert rep.adjoint_identity and rep.annihilator_identity_a and rep.annihilator_identity_b
    assert rep.c_star is None and rep.von_neumann is None

    rep = check_prop23(OperatorSpace.zero(2, 2))
    assert rep.failures() == []


def test_printed_b_identity_counterexample():
    # B_M against (M M_⊥)^⊥ fails for span{E12}; the transposed product is the true identity
    m = span(E(1, 2))
    m_perp = preannihilator(m)
    assert b_algebra(m) != annihilator(product_span(m, m_perp))
    assert b_algebra(m) == annihilator(product_span(m_perp, adjoint_space(m)))
    assert check_prop23(m).annihilator_identity_b_as_printed is False


@settings(max_examples=25, deadline=None)
@given(square_spaces())
def test_annihilator_identities(m):
    rep = check_prop23(m, reflexive=False)
    assert rep.adjoint_identity and rep.annihilator_identity_a and rep.annihilator_identity_b


def test_complement_basis_witness():
    ref = UPPER2
    m = span(I(), E(1, 2))
    (w,) = complement_basis(ref, m)
    assert w == E(1, 1)
    assert complement_basis(m, m) == []


def test_pattern_and_shapes():
    m = OperatorSpace.pattern(2, 2, [(0, 1)])
    assert m == span(E(1, 2))
    assert m.shape == (2, 2) and m.dim == 1
    with pytest.raises(ValueError):
        OperatorSpace(2, 2, [M([[1, 2, 3]])])
