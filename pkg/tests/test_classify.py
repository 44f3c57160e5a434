"""
Classification Test Suite
Components of V_{d,2} and V_{d,3}, the Case I tridiagonal system, normal forms and Case III
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import random

import pytest

from exceptions import DegenerateTriple
from models import ComponentKind, GoodConeVerdict
from services import builders, dimensions
from services.classify_service import classify_service, t_invariant, tridiag_solve
from services.configspace_service import config_space_service
from services.fields import CycloField
from services.polynomials import MultiPoly
from services.univariate import UniPoly

Q = CycloField(1)


def print_test_header(test_name):
    print(f"\n{'='*80}")
    print(f"TEST: {test_name}")
    print(f"{'='*80}")


def configuration_at(surface, points, strict=True):
    triples = config_space_service.triples_from_hypersurface(surface, points, strict)
    return config_space_service.make_configuration(triples)


def fermat_points(*indices):
    return [builders.fermat_point(3, 3, i, j, k) for i, j, k in indices]


# =============================================================================
# Tridiagonal system
# =============================================================================

def test_tridiagonal_invertible():
    result = tridiag_solve(4, Q.from_rational(2))
    assert result['det'] == 15
    assert result['solution'] is None


def test_tridiagonal_kernel_at_cube_root():
    omega = CycloField(3).zeta(3)
    result = tridiag_solve(3, omega)
    assert result['det'] == 0
    assert result['solution'] == [1, 1 + omega]


@pytest.mark.parametrize("j", [2, 3, 4, 5])
def test_tridiagonal_symbolic_determinant(j):
    t = UniPoly.x('t')
    result = tridiag_solve(j, t)
    expected = sum((t ** k for k in range(1, j)), t ** 0)
    assert result['det'] == expected
    assert result['solution'] is None


def test_tridiagonal_needs_j_at_least_two():
    with pytest.raises(ValueError):
        tridiag_solve(1, Q.from_rational(2))


# =============================================================================
# Three star points
# =============================================================================

def test_fermat_triple_is_case_one():
    print_test_header("Three star points of the Fermat cubic surface")
    surface, _ = builders.build_fermat(3, 3)
    config = configuration_at(surface, fermat_points((0, 1, 0), (0, 1, 1), (0, 2, 2)))
    t = t_invariant(config)
    assert t == surface.field.zeta(3, 2)
    label = classify_service.classify_three(config)
    print(f"✓ {label}")
    assert label.kind is ComponentKind.VT
    assert label.order == 3
    assert label.dimension == 15
    assert label.is_expected
    assert label.codim_bound_holds


FERMAT_T_CASES = [
    ('same_pair', (0, 1, 2)),
    ('same_pair', (1, 2, 0)),
    ('same_pair', (2, 0, 1)),
    ('three_pairs', (0, 1, 0)),
    ('three_pairs', (1, 2, 1)),
    ('three_pairs', (2, 1, 2)),
]


@pytest.mark.parametrize("kind, ks", FERMAT_T_CASES)
def test_fermat_triples_t_invariant(kind, ks):
    # E01(xi_a), E01(xi_b), E02(xi_c) gives xi_a/xi_b;
    # E01(xi_a), E02(xi_b), E12(xi_c) gives (xi_b/(xi_a xi_c))^2
    surface, _ = builders.build_fermat(3, 3)
    a, b, c = ks
    xi = [builders.fermat_xi(3, k) for k in range(3)]
    if kind == 'same_pair':
        points = fermat_points((0, 1, a), (0, 1, b), (0, 2, c))
        expected = xi[a] / xi[b]
    else:
        points = fermat_points((0, 1, a), (0, 2, b), (1, 2, c))
        expected = (xi[b] / (xi[a] * xi[c])) ** 2
    config = configuration_at(surface, points)
    assert config.general_position
    assert t_invariant(config) == expected
    assert expected.order() == 3
    label = classify_service.classify_three(config)
    assert label.kind is ComponentKind.VT
    assert label.order == 3


def test_case1_round_trip():
    field = CycloField(6)
    t = field.zeta(2)
    surface = builders.build_case1(3, 3, t, seed=42)
    config = configuration_at(surface, builders.case1_points(field, 3, t))
    label = classify_service.classify_three(config)
    assert label.kind is ComponentKind.VT
    assert label.t == t
    assert label.order == 2
    assert label.dimension == dimensions.vt_dimension(3, 3, 2)


def test_intermediate_component():
    surface = builders.build_intermediate(3, 3, seed=42)
    config = configuration_at(surface, builders.intermediate_points(surface.field, 3))
    assert config.incident_pairs() == [(1, 2)]
    label = classify_service.classify_three(config)
    assert label.kind is ComponentKind.INTERMEDIATE
    assert label.dimension == dimensions.intermediate_dimension(3, 3)


def test_extremal_independent_component():
    surface = builders.build_extremal(3, 5, 'indep', seed=42)
    config = configuration_at(surface, builders.extremal_points(surface.field, 5))
    label = classify_service.classify_three(config)
    assert label.kind is ComponentKind.EXTREMAL_INDEP
    assert label.dimension == dimensions.extremal_dimensions(5, 3)['config_indep']
    assert 'conjectural' in label.note


def test_extremal_dependent_component():
    surface = builders.build_extremal(3, 5, 'dep', seed=42)
    config = configuration_at(surface, builders.extremal_points(surface.field, 5), strict=False)
    label = classify_service.classify_three(config)
    assert label.kind is ComponentKind.EXTREMAL_DEP
    assert label.dimension == dimensions.extremal_dimensions(5, 3)['config_dep']


def test_classify_three_rejects_other_sizes():
    surface, _ = builders.build_fermat(3, 3)
    config = configuration_at(surface, fermat_points((0, 1, 0), (0, 2, 1)))
    with pytest.raises(ValueError):
        classify_service.classify_three(config)


def test_coincident_vertices():
    surface, _ = builders.build_fermat(3, 3)
    triples = config_space_service.triples_from_hypersurface(surface, fermat_points((0, 1, 0), (0, 2, 1)))
    config = config_space_service.make_configuration([triples[0], triples[0], triples[1]])
    with pytest.raises(DegenerateTriple):
        classify_service.classify_three(config)


# =============================================================================
# Case III
# =============================================================================

def test_case3_is_not_suited():
    config = builders.case3_fixture()
    label = classify_service.classify_three(config)
    assert label.kind is ComponentKind.NOT_SUITED
    assert 'Case III' in label.note
    assert label.dimension is None

    result = classify_service.case3_check(config)
    assert not result['suited']
    assert result['contradiction']


def test_case3_with_shared_cone_has_bad_cones():
    X0, X1, X2, X3 = (MultiPoly.variable(Q, 4, i) for i in range(4))
    shared = X0 * X1 * (X0 - X1) + X3 ** 3
    reference = builders.case3_fixture()
    triples = [
        config_space_service.validate_triple(t.plane, t.vertex, shared, 3, strict=False)
        for t in reference.triples
    ]
    assert all(t.good_cone is GoodConeVerdict.SINGULAR_OUTSIDE_VERTEX for t in triples)
    result = classify_service.case3_check(config_space_service.make_configuration(triples))
    assert result['bad_cones'] == [0, 1, 2]
    assert result['contradiction']


# =============================================================================
# Two star points
# =============================================================================

def test_two_points_in_general_position():
    surface, _ = builders.build_fermat(3, 3)
    config = configuration_at(surface, fermat_points((0, 1, 0), (0, 2, 1)))
    label = classify_service.classify_two(config)
    assert label.kind is ComponentKind.TWO_GENERAL
    assert label.dimension == 13

    normal = classify_service.normal_form_two(config)
    assert normal.shape == 'General'
    assert normal.reassemble() == normal.transformed
    assert set(normal.parts) == {'g01', 'g'}


@pytest.mark.parametrize("seed", range(12))
def test_normal_form_two_fits_seeded_fermat_pairs(seed):
    rng = random.Random(seed)
    d = 3 + seed % 2
    surface, points = builders.build_fermat(d, 3)
    first, second = rng.sample(points, 2)
    config = configuration_at(surface, [first, second])
    normal = classify_service.normal_form_two(config)
    assert normal.shape == ('General' if config.general_position else 'LineInX')
    assert normal.reassemble() == normal.transformed


def test_two_points_on_a_line_in_x():
    print_test_header("Two star points joined by a line inside X")
    surface, _, points = builders.quartic_fixture()
    config = configuration_at(surface, points)
    assert not config.general_position
    assert config_space_service.vd_basis(config).projective_dim == 11

    label = classify_service.classify_two(config)
    assert label.kind is ComponentKind.TWO_LINE_IN_X
    assert label.dimension == 14

    normal = classify_service.normal_form_two(config)
    assert normal.shape == 'LineInX'
    assert normal.reassemble() == normal.transformed
    print(f"✓ {normal.to_dict()['parts']}")


# =============================================================================
# Component table
# =============================================================================

def test_component_table_cubic_surface():
    rows = classify_service.component_table(3, 3)
    assert len(rows) == 4
    assert [r.dimension for r in rows] == [15, 15, 15, 16]
    assert [r.kind for r in rows[:3]] == [ComponentKind.VT] * 3
    assert rows[-1].kind is ComponentKind.V1
    assert sorted(r.order for r in rows[:3]) == [2, 3, 3]


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_component_table_size(d):
    rows = classify_service.component_table(d, 3)
    assert len(rows) == 2 * d - 2
    assert all(r.codim_bound_holds for r in rows)
    expected = [r for r in rows if r.is_expected]
    assert len(expected) == dimensions.expected_component_count(3, d)


def test_component_table_rejects_small_input():
    with pytest.raises(ValueError):
        classify_service.component_table(2, 3)


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
