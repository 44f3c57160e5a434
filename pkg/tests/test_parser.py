"""
Text Format Test Suite
Polynomial, point, line, hypersurface-file and configuration-file parsing
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
from hypothesis import assume, given, settings, strategies as st

from exceptions import (
    ConfigError, FieldMismatch, InhomogeneousInput, ParseError, UndeclaredVariable,
    VertexNotOnPlane, WrongDegree,
)
from models import ComponentKind, ProjPoint
from services.classify_service import classify_service
from services.fields import CycloField
from services.parser import (
    format_config, format_line, format_point, infer_conductor, parse_config, parse_line, parse_point,
    parse_poly, parse_x_file,
)
from services.polynomials import MultiPoly

Q = CycloField(1)

FERMAT_PAIR = """
# A Fermat pair of the cubic surface
session 3 3 6
triple: plane X0 - (1-z)*X1; vertex 1:z:0:0; cone X2^3 + X3^3
triple: plane X0 + X1; vertex 1:-1:0:0;
        cone X2^3 + X3^3
"""


def X(i, nvars=3, field=Q):
    return MultiPoly.variable(field, nvars, i)


# =============================================================================
# Polynomials
# =============================================================================

def test_parse_simple_form():
    poly = parse_poly("X0^2 - 3*X1^2", nvars=3)
    assert poly == X(0) ** 2 - X(1) ** 2 * 3
    assert poly.field is Q


def test_implicit_multiplication_and_fractions():
    assert parse_poly("2X0X1", nvars=3) == X(0) * X(1) * 2
    half = parse_poly("1/2*X2", nvars=3)
    assert half * 2 == X(2)
    assert parse_poly("(X0 + X1)^2", nvars=3) == X(0) ** 2 + X(0) * X(1) * 2 + X(1) ** 2


def test_variable_count_is_inferred():
    assert parse_poly("X0 + X4").nvars == 5


def test_conductor_from_literals():
    assert infer_conductor("z6*X0", "z4") == 12
    poly = parse_poly("z6*X0 + X1")
    assert poly.field is CycloField(6)
    assert poly.coefficient((1, 0)) == CycloField(6).zeta(6)


def test_bare_z_needs_a_conductor():
    with pytest.raises(ParseError):
        parse_poly("z*X0")
    poly = parse_poly("z*X0", conductor=6)
    assert poly.coefficient((1,)) == CycloField(6).gen


def test_undeclared_variable_position():
    with pytest.raises(UndeclaredVariable) as info:
        parse_poly("X0 + Y1", nvars=2)
    assert info.value.position == 5
    with pytest.raises(UndeclaredVariable):
        parse_poly("X0 + X3", nvars=3)


def test_syntax_error_position():
    with pytest.raises(ParseError) as info:
        parse_poly("X0 +", nvars=1)
    assert info.value.position == 4
    with pytest.raises(ParseError):
        parse_poly("X0 $ X1", nvars=2)
    with pytest.raises(ParseError):
        parse_poly("1/0", nvars=1)


def test_inhomogeneous_input():
    with pytest.raises(InhomogeneousInput):
        parse_poly("X0 + X1^2", nvars=2, homogeneous=True)
    with pytest.raises(InhomogeneousInput):
        parse_poly("X0 - X0", nvars=1, homogeneous=True)


def test_literal_outside_the_field():
    with pytest.raises(FieldMismatch):
        parse_poly("z4*X0", conductor=6)


def test_canonical_print_parses_back():
    field = CycloField(6)
    poly = parse_poly("(1-z)*X0^3 + 1/3*X1^2*X2 - X2^3", nvars=3, conductor=6)
    assert parse_poly(str(poly), nvars=3, field=field) == poly


def polynomials(field, nvars=3):
    coeffs = st.lists(
        st.fractions(min_value=-9, max_value=9, max_denominator=5),
        min_size=field.degree, max_size=field.degree,
    ).map(field.element)
    exps = st.tuples(*[st.integers(min_value=0, max_value=3)] * nvars)
    return st.dictionaries(exps, coeffs, min_size=1, max_size=6).map(lambda terms: MultiPoly(field, nvars, terms))


@pytest.mark.parametrize("n", [1, 4, 6, 8, 12])
@settings(derandomize=True, deadline=None, max_examples=30)
@given(data=st.data())
def test_random_polynomials_print_and_parse_back(n, data):
    field = CycloField(n)
    poly = data.draw(polynomials(field))
    assume(not poly.is_zero())
    assert parse_poly(str(poly), nvars=3, field=field) == poly


# =============================================================================
# Points and lines
# =============================================================================

def test_points_are_normalized():
    assert parse_point("(2:4:6)") == ProjPoint.of(Q, [1, 2, 3])
    assert parse_point("0:3:-6") == ProjPoint.of(Q, [0, 1, -2])


def test_point_coordinates_with_literals():
    field = CycloField(6)
    point = parse_point("1:z6:0:0")
    assert point.field is field
    assert point.coords[1] == field.zeta(6)
    assert parse_point(format_point(point), field=field) == point


def test_point_size_is_checked():
    with pytest.raises(WrongDegree):
        parse_point("1:2", size=3)
    with pytest.raises(ParseError):
        parse_point("1")


def test_parse_line():
    line = parse_line("1:0:0:0;0:1:0:0")
    assert line.contains(ProjPoint.of(Q, [1, 1, 0, 0]))
    assert not line.contains(ProjPoint.of(Q, [0, 0, 1, 0]))
    with pytest.raises(ParseError):
        parse_line("1:0:0:0")


def test_format_line_parses_back():
    field = CycloField(6)
    line = parse_line("1:z:0:0;0:0:1:1-z", conductor=6)
    again = parse_line(format_line(line), field=field, size=4)
    assert again == line
    assert again.contains(line.point(2, 3))


# =============================================================================
# Hypersurface files
# =============================================================================

def test_x_file_with_session():
    surface, session = parse_x_file("session 3 3 1\nX0^3 + X1^3\n  + X2^3 + X3^3  # Fermat\n")
    assert session.degree == 3
    assert surface.ambient_dim == 3
    assert surface.degree == 3


def test_x_file_without_session():
    surface, session = parse_x_file("X0^3 + X1^3 + X2^3")
    assert session is None
    assert surface.ambient_dim == 2


def test_x_file_degree_must_match_session():
    with pytest.raises(WrongDegree):
        parse_x_file("session 3 3 1\nX0^4 + X1^4 + X2^4 + X3^4\n")
    with pytest.raises(ParseError):
        parse_x_file("session 3 3 1\n# nothing here\n")


# =============================================================================
# Configuration files
# =============================================================================

def test_parse_fermat_pair():
    config, session = parse_config(FERMAT_PAIR)
    assert session.conductor == 6
    assert config.size == 2
    assert config.general_position
    label = classify_service.classify_two(config)
    assert label.kind is ComponentKind.TWO_GENERAL


def test_config_error_carries_the_index():
    text = "session 3 3 1\ntriple: plane X0; vertex 1:0:0:0; cone X2^3 + X3^3\n"
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.index == 1
    assert isinstance(info.value.cause, VertexNotOnPlane)


def test_config_missing_field():
    text = "session 3 3 1\ntriple: plane X3; vertex 1:0:0:0; cone X1^3 + X2^3\ntriple: plane X0\n"
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.index == 2
    assert isinstance(info.value.cause, ParseError)


def test_config_needs_a_session_line():
    with pytest.raises(ParseError):
        parse_config("triple: plane X3; vertex 1:0:0:0; cone X1^3 + X2^3\n")


def test_format_config_parses_back():
    config, _ = parse_config(FERMAT_PAIR)
    again, _ = parse_config(format_config(config))
    assert [t.plane for t in again.triples] == [t.plane for t in config.triples]
    assert [t.vertex for t in again.triples] == [t.vertex for t in config.triples]
    assert [t.cone for t in again.triples] == [t.cone for t in config.triples]


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
