"""
Linear Algebra Test Suite
Bareiss elimination over Q, Q(zeta_n) and Q[t], with sympy as the determinant oracle
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix

from exceptions import NonSquare, SingularMatrix
from services.fields import CycloField
from services.linalg import ExactMatrix, in_span, rank_of_vectors
from services.univariate import UniPoly


def square_matrices(n):
    return st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=n, max_size=n),
        min_size=n, max_size=n,
    )


# =============================================================================
# Determinant, rank, nullspace
# =============================================================================

@settings(derandomize=True, deadline=None, max_examples=50)
@given(st.integers(min_value=1, max_value=5).flatmap(square_matrices))
def test_determinant_matches_sympy(rows):
    expected = Matrix(rows).det()
    assert ExactMatrix(rows).determinant() == Fraction(int(expected))


@settings(derandomize=True, deadline=None, max_examples=40)
@given(st.lists(st.lists(st.integers(min_value=-3, max_value=3), min_size=5, max_size=5), min_size=1, max_size=4))
def test_nullspace_is_kernel(rows):
    matrix = ExactMatrix(rows)
    kernel = matrix.nullspace()
    assert matrix.rank() + len(kernel) == 5
    assert matrix.rank() == Matrix(rows).rank()
    for vector in kernel:
        assert all(x == 0 for x in matrix.apply(vector))


def test_nullspace_vectors_lead_with_one():
    matrix = ExactMatrix([[2, 4, 6]])
    for vector in matrix.nullspace():
        lead = next(x for x in vector if x != 0)
        assert lead == 1


def test_inverse_over_cyclotomic_field():
    field = CycloField(3)
    w = field.gen
    matrix = ExactMatrix([[1, w], [w, 1]], field=field)
    product = matrix * matrix.inverse()
    assert product == ExactMatrix.identity(2, field)


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrix):
        ExactMatrix([[1, 2], [2, 4]]).inverse()


def test_nonsquare_determinant_raises():
    with pytest.raises(NonSquare):
        ExactMatrix([[1, 2, 3], [4, 5, 6]]).determinant()


def test_empty_determinant_is_one():
    assert ExactMatrix([], 0).determinant() == 1


# =============================================================================
# Polynomial entries
# =============================================================================

def test_symbolic_determinant():
    t = UniPoly.x('t')
    matrix = ExactMatrix([[t + 1, -1], [-t, t + 1]])
    assert matrix.determinant() == t ** 2 + t + 1


def test_vandermonde_determinant():
    t = UniPoly.x('t')
    matrix = ExactMatrix([[1, 1, 1], [1, t, t ** 2], [1, 2, 4]])
    # (t - 1)(2 - 1)(2 - t)
    assert matrix.determinant() == (t - 1) * (2 - t)


# =============================================================================
# Span helpers
# =============================================================================

def test_rank_and_span():
    vectors = [[1, 0, 1], [0, 1, 1]]
    assert rank_of_vectors(vectors, 3) == 2
    assert in_span(vectors, [2, 3, 5], 3)
    assert not in_span(vectors, [0, 0, 1], 3)
    assert rank_of_vectors([], 3) == 0


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
