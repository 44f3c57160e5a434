"""
Polynomial Test Suite
Sparse multivariate forms, exact division, substitution and binary forms
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
from hypothesis import given, settings, strategies as st

from exceptions import InexactDivision, SingularMatrix, ZeroPolynomial
from services.fields import CycloField
from services.linalg import ExactMatrix
from services.polynomials import BinaryForm, MultiPoly, monomials
from services.univariate import UniPoly

Q = CycloField(1)
Q3 = CycloField(3)


def X(i, nvars=3, field=Q):
    return MultiPoly.variable(field, nvars, i)


def forms(nvars, degree, field=Q):
    """Hypothesis strategy for forms of one degree with small integer coefficients"""
    basis = monomials(nvars, degree)
    return st.lists(st.integers(min_value=-4, max_value=4), min_size=len(basis), max_size=len(basis)).map(
        lambda coeffs: MultiPoly.from_vector(field, nvars, basis, coeffs)
    )


# =============================================================================
# Monomials and printing
# =============================================================================

def test_monomial_order():
    basis = monomials(3, 2)
    assert len(basis) == 6
    assert basis[0] == (2, 0, 0)
    assert basis[-1] == (0, 0, 2)
    assert len(monomials(4, 3)) == 20


def test_canonical_string():
    poly = X(0, 2) ** 2 - X(1, 2) ** 2 * 3
    assert poly.to_string() == "X0^2 - 3*X1^2"
    assert str(X(0) ** 3 + X(1) ** 3) == "X0^3 + X1^3"
    assert str(MultiPoly.zero(Q, 3)) == "0"
    omega = MultiPoly.variable(Q3, 2, 0) * Q3.gen
    assert str(omega) == "(z)*X0"


def test_degree_and_homogeneity():
    f = X(0) ** 2 * X(1) + X(2) ** 3
    assert f.degree == 3
    assert f.homogeneous_degree() == 3
    assert (f + X(0)).homogeneous_degree() is None
    with pytest.raises(ZeroPolynomial):
        MultiPoly.zero(Q, 3).homogeneous_degree()


# =============================================================================
# Division
# =============================================================================

def test_exact_division():
    a = X(0) + X(1)
    b = X(0) - X(1)
    assert (a * b).exact_div(b) == a
    assert (a ** 3) / a == a * a


def test_inexact_division_raises():
    with pytest.raises(InexactDivision):
        (X(0, 2) ** 2 + X(1, 2)).exact_div(X(0, 2))


def test_division_by_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        X(0).exact_div(MultiPoly.zero(Q, 3))


def test_geometric_quotient_over_cyclotomic():
    # (Y^j - X^j) / ((Y - X)(Y - t X)) for t a primitive cube root of unity, j = 3
    t = Q3.gen
    x0, x1 = MultiPoly.variable(Q3, 2, 0), MultiPoly.variable(Q3, 2, 1)
    numerator = x0 ** 3 - x1 ** 3
    quotient = numerator.exact_div((x0 - x1) * (x0 - x1 * t))
    assert quotient == x0 - x1 * t ** 2


# =============================================================================
# Calculus and substitution
# =============================================================================

def test_partial_derivatives():
    f = X(0) ** 2 * X(1) + X(2) ** 3
    assert f.partial_derivative(0) == X(0) * X(1) * 2
    assert f.partial_derivative(2) == X(2) ** 2 * 3
    with pytest.raises(ValueError):
        f.partial_derivative(3)


@settings(derandomize=True, deadline=None, max_examples=30)
@given(forms(3, 3))
def test_euler_identity(f):
    total = MultiPoly.zero(Q, 3)
    for i, g in enumerate(f.gradient()):
        total = total + X(i) * g
    assert total == f * 3


@settings(derandomize=True, deadline=None, max_examples=30)
@given(forms(3, 2), forms(3, 2))
def test_evaluation_is_a_ring_map(f, g):
    point = [2, -1, 3]
    assert (f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point)
    assert (f + g).evaluate(point) == f.evaluate(point) + g.evaluate(point)


def test_compose_with_identity():
    f = X(0) ** 3 + X(1) * X(2) ** 2
    assert f.compose([X(0), X(1), X(2)]) == f


def test_substitute_linear_swaps_variables():
    f = X(0) ** 3 + X(1) * X(2) ** 2
    swap = ExactMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]], field=Q)
    assert f.substitute_linear(swap) == X(1) ** 3 + X(0) * X(2) ** 2


invertible_matrices = st.lists(
    st.integers(min_value=-3, max_value=3), min_size=9, max_size=9,
).map(lambda entries: ExactMatrix([entries[0:3], entries[3:6], entries[6:9]], 3, Q3)).filter(
    lambda matrix: matrix.rank() == 3
)


@settings(derandomize=True, deadline=None, max_examples=40)
@given(forms(3, 3, Q3), invertible_matrices)
def test_substitute_then_inverse_is_identity(f, matrix):
    moved = f.substitute_linear(matrix)
    assert moved.substitute_linear(matrix.inverse()) == f
    if not f.is_zero():
        assert moved.homogeneous_degree() == 3


def test_substitute_singular_matrix_raises():
    f = X(0) ** 3
    with pytest.raises(SingularMatrix):
        f.substitute_linear(ExactMatrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]], field=Q))


def test_drop_and_embed_variables():
    f = X(1, 4) ** 2 * X(3, 4)
    reduced = f.drop_variables([0, 2])
    assert reduced == MultiPoly.variable(Q, 2, 0) ** 2 * MultiPoly.variable(Q, 2, 1)
    assert reduced.embed(4, [1, 3]) == f
    with pytest.raises(ValueError):
        f.drop_variables([1])


def test_to_univariate():
    f = X(1, 3) ** 3 * 2 - X(1, 3)
    assert f.to_univariate(1) == UniPoly([0, -1, 0, 2])


# =============================================================================
# Binary forms
# =============================================================================

def test_binary_form_infinity_multiplicity():
    # u^2 * s: the root (1:0) has multiplicity 2
    form = BinaryForm(Q, 3, [0, 1, 0, 0])
    assert form.infinity_multiplicity() == 2
    assert form.evaluate(1, 0) == 0
    assert form.evaluate(0, 1) == 0
    assert form.evaluate(1, 1) == 1


def test_binary_form_from_poly():
    s, u = MultiPoly.variable(Q, 2, 0), MultiPoly.variable(Q, 2, 1)
    form = BinaryForm.from_poly(s ** 3 + u ** 3, 3)
    assert list(form.coeffs) == [1, 0, 0, 1]
    assert str(form) == "s^3 + u^3"
    with pytest.raises(ValueError):
        BinaryForm.from_poly(s ** 3 + u, 3)


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
