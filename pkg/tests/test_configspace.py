"""
Configuration Space Test Suite
Triples, the linear system V_d(L), suitedness witnesses and restriction dimensions
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from exceptions import (
    BadCone, EmptySystem, NotACone, NotApplicable, PointOnPlane, VertexNotOnPlane, WrongDegree,
)
from models import GoodConeVerdict, Hyperplane, ProjPoint
from services import builders, dimensions
from services.configspace_service import config_space_service
from services.fields import CycloField
from services.geometry_service import Chart
from services.linalg import in_span
from services.polynomials import MultiPoly, monomials

Q = CycloField(1)


def X(i, nvars=4):
    return MultiPoly.variable(Q, nvars, i)


def fermat_configuration(size):
    """Triples of the Fermat cubic surface at E01(xi_0), E01(xi_1), E02(xi_2)"""
    surface, _ = builders.build_fermat(3, 3)
    points = [
        builders.fermat_point(3, 3, 0, 1, 0),
        builders.fermat_point(3, 3, 0, 1, 1),
        builders.fermat_point(3, 3, 0, 2, 2),
    ]
    triples = config_space_service.triples_from_hypersurface(surface, points[:size])
    return surface, config_space_service.make_configuration(triples)


# =============================================================================
# Triples
# =============================================================================

def test_validate_triple_normalizes_cone():
    plane = Hyperplane.of(Q, [0, 0, 0, 1])
    vertex = ProjPoint.of(Q, [1, 0, 0, 0])
    triple = config_space_service.validate_triple(plane, vertex, (X(1) ** 3 + X(2) ** 3) * 5, 3)
    assert triple.good_cone is GoodConeVerdict.GOOD
    assert triple.cone == X(1) ** 3 + X(2) ** 3
    assert triple.degree == 3


def test_vertex_not_on_plane():
    with pytest.raises(VertexNotOnPlane):
        config_space_service.validate_triple(
            Hyperplane.of(Q, [1, 0, 0, 0]), ProjPoint.of(Q, [1, 0, 0, 0]), X(1) ** 3 + X(2) ** 3, 3,
        )


def test_not_a_cone():
    plane = Hyperplane.of(Q, [0, 0, 0, 1])
    vertex = ProjPoint.of(Q, [1, 0, 0, 0])
    with pytest.raises(NotACone):
        config_space_service.validate_triple(plane, vertex, X(0) ** 3 + X(1) ** 3 + X(2) ** 3, 3)
    with pytest.raises(NotACone):
        config_space_service.validate_triple(plane, vertex, X(0) * X(1) ** 2 + X(2) ** 3, 3)
    with pytest.raises(NotACone):
        config_space_service.validate_triple(plane, vertex, X(3) ** 3, 3)


def test_wrong_degree():
    plane = Hyperplane.of(Q, [0, 0, 0, 1])
    vertex = ProjPoint.of(Q, [1, 0, 0, 0])
    with pytest.raises(WrongDegree):
        config_space_service.validate_triple(plane, vertex, X(1) ** 2 + X(2) ** 2, 3)


def test_bad_cone_strict_and_nonstrict():
    plane = Hyperplane.of(Q, [0, 0, 0, 1])
    vertex = ProjPoint.of(Q, [1, 0, 0, 0])
    cone = X(1) ** 2 * X(2)
    with pytest.raises(BadCone):
        config_space_service.validate_triple(plane, vertex, cone, 3)
    triple = config_space_service.validate_triple(plane, vertex, cone, 3, strict=False)
    assert triple.good_cone is GoodConeVerdict.SINGULAR_OUTSIDE_VERTEX


def test_chart_cone_input_is_accepted():
    plane = Hyperplane.of(Q, [0, 0, 0, 1])
    vertex = ProjPoint.of(Q, [1, 0, 0, 0])
    chart_cone = MultiPoly.variable(Q, 3, 1) ** 3 + MultiPoly.variable(Q, 3, 2) ** 3
    triple = config_space_service.validate_triple(plane, vertex, chart_cone, 3)
    assert triple.cone == X(1) ** 3 + X(2) ** 3


def test_incidence_table():
    _, config = fermat_configuration(3)
    assert config.size == 3
    assert config.general_position
    assert config.incident_pairs() == []
    assert all(config.incidence[i][i] for i in range(3))


def test_empty_configuration_needs_session_data():
    with pytest.raises(NotApplicable):
        config_space_service.make_configuration([])
    config = config_space_service.make_configuration([], ambient_dim=3, degree=3, field=Q)
    assert config.size == 0


# =============================================================================
# V_d(L) and its dimension
# =============================================================================

@pytest.mark.parametrize("size, expected", [(1, 10), (2, 4), (3, 1)])
def test_fermat_linear_system_dimension(size, expected):
    surface, config = fermat_configuration(size)
    report = config_space_service.dim_report(config)
    assert report.projective_dim == expected
    assert report.expected == expected
    assert report.match
    assert report.suited


def test_empty_configuration_gives_all_forms():
    config = config_space_service.make_configuration([], ambient_dim=3, degree=3, field=Q)
    system = config_space_service.vd_basis(config)
    assert system.vector_dim == len(monomials(4, 3))


def test_hypersurface_lies_in_its_own_system():
    surface, config = fermat_configuration(3)
    system = config_space_service.vd_basis(config)
    vectors = list(system.vectors)
    target = surface.equation.coefficient_vector(system.monomials)
    assert in_span(vectors, target, len(system.monomials), surface.field)


def test_basis_restricts_to_multiples_of_cones():
    _, config = fermat_configuration(2)
    system = config_space_service.vd_basis(config)
    for triple in config.triples:
        chart = Chart(triple.plane)
        basis = monomials(chart.nvars, 3)
        cone = triple.chart_cone.coefficient_vector(basis)
        for g in system.basis:
            restricted = chart.restrict(g).coefficient_vector(basis)
            assert in_span([cone], restricted, len(basis), config.field)


# =============================================================================
# Suitedness
# =============================================================================

def test_suited_witness_restricts_to_each_cone():
    _, config = fermat_configuration(3)
    report = config_space_service.is_suited(config, seed=7)
    assert report.suited
    assert report.witness is not None
    assert report.forced_singular == []
    assert all(report.functionals_nonzero)
    for triple in config.triples:
        restricted = Chart(triple.plane).restrict(report.witness)
        assert restricted.monic() == triple.chart_cone


def test_witness_is_deterministic_per_seed():
    _, config = fermat_configuration(2)
    first = config_space_service.is_suited(config, seed=11)
    second = config_space_service.is_suited(config, seed=11)
    assert first.witness == second.witness
    assert first.witness_coefficients == second.witness_coefficients
    assert first.to_dict()['membership'] in ('suited', 'suited + probe-smooth')


def test_case3_configuration_is_not_suited():
    config = builders.case3_fixture()
    try:
        report = config_space_service.is_suited(config)
    except EmptySystem:
        return
    assert not report.suited
    assert report.membership == 'not suited'


# =============================================================================
# Restriction to hyperplanes
# =============================================================================

@pytest.mark.parametrize("size", [1, 2])
def test_restriction_dimension_on_generic_planes(size):
    _, config = fermat_configuration(size)
    for plane in config_space_service.generic_hyperplanes(config, count=2, seed=3):
        report = config_space_service.restriction_dim(config, plane)
        assert report.dim == report.expected, f"{plane}: {report.dim} vs {report.expected}"
        assert report.contains_sublinear


def family_configuration(family, d, N, size):
    """Suited configurations from the Fermat and Case I families"""
    if family == 'fermat':
        surface, _ = builders.build_fermat(d, N)
        points = [builders.fermat_point(d, N, 0, 1, 0), builders.fermat_point(d, N, 0, 1, 1),
                  builders.fermat_point(d, N, 0, 2, 2)]
    else:
        t = CycloField(6).zeta(3)
        surface = builders.build_case1(d, N, t, seed=42)
        points = builders.case1_points(t.field, N, t)
    triples = config_space_service.triples_from_hypersurface(surface, points[:size], strict=False)
    return config_space_service.make_configuration(triples)


@pytest.mark.parametrize("family", ['fermat', 'case1'])
@pytest.mark.parametrize("d, N", [(3, 3), (4, 3), (3, 4)])
@pytest.mark.parametrize("size", [1, 2, 3])
def test_family_dimensions_and_restrictions(family, d, N, size):
    config = family_configuration(family, d, N, size)
    system = config_space_service.vd_basis(config)
    report = config_space_service.dim_report(config, system)
    assert report.projective_dim == dimensions.linear_system_dim(N, d, size)
    assert report.match
    planes = config_space_service.generic_hyperplanes(config, count=5, seed=42)
    assert len(planes) == 5
    for plane in planes:
        restricted = config_space_service.restriction_dim(config, plane, system)
        assert restricted.dim == dimensions.restriction_expected_dim(N, d, size), f"{plane}"


def test_generic_planes_avoid_vertices():
    _, config = fermat_configuration(3)
    planes = config_space_service.generic_hyperplanes(config, count=4, seed=5)
    assert len(planes) == 4
    for plane in planes:
        assert not any(plane.contains(t.vertex) for t in config.triples)


def test_restriction_through_vertex_raises():
    _, config = fermat_configuration(1)
    with pytest.raises(PointOnPlane):
        config_space_service.restriction_dim(config, config.triples[0].plane)


# =============================================================================
# Extension candidates
# =============================================================================

def test_extension_contains_the_actual_cone():
    surface, config = fermat_configuration(3)
    first_two = config_space_service.make_configuration(config.triples[:2])
    third = config.triples[2]
    space = config_space_service.extend_candidates(first_two, third.plane, third.vertex)
    assert space.dimension >= 1
    basis = monomials(3, 3)
    vectors = [g.coefficient_vector(basis) for g in space.chart_basis]
    assert in_span(vectors, third.chart_cone.coefficient_vector(basis), len(basis), surface.field)


def test_extension_vertex_must_lie_on_plane():
    _, config = fermat_configuration(2)
    third_point = builders.fermat_point(3, 3, 0, 2, 2)
    with pytest.raises(VertexNotOnPlane):
        config_space_service.extend_candidates(config, config.triples[0].plane, third_point)


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
