"""
Star point services
Provides easy imports for all service components
"""

from .fields import CycloField, CycloNum, cyclotomic_poly, euler_phi
from .polynomials import BinaryForm, MultiPoly
from .linalg import ExactMatrix
from .geometry_service import (
    cone_through, is_cone_with_vertex, is_good_cone, multiplicity_at,
    restrict_to_hyperplane, restrict_to_line, tangent_hyperplane,
)
from .starpoint_service import (
    forced_dth_star, is_star_point, polar_hypersurface, star_points_on_line, star_via_polar,
)
from .configspace_service import (
    dim_report, extend_candidates, is_suited, make_configuration, restriction_dim,
    triples_from_hypersurface, validate_triple, vd_basis,
)
from .builders import (
    build_case1, build_collinear, build_extremal, build_fermat, build_intermediate,
    enumerate_fermat_star_points, quartic_fixture,
)
from .classify_service import (
    case3_check, classify_three, classify_two, component_table, normal_form_two, tridiag_solve,
)
from .parser import parse_config, parse_line, parse_point, parse_poly, parse_x_file
from .report_service import render_json, render_text

__all__ = [
    'CycloField',
    'CycloNum',
    'cyclotomic_poly',
    'euler_phi',
    'BinaryForm',
    'MultiPoly',
    'ExactMatrix',
    'cone_through',
    'is_cone_with_vertex',
    'is_good_cone',
    'multiplicity_at',
    'restrict_to_hyperplane',
    'restrict_to_line',
    'tangent_hyperplane',
    'forced_dth_star',
    'is_star_point',
    'polar_hypersurface',
    'star_points_on_line',
    'star_via_polar',
    'dim_report',
    'extend_candidates',
    'is_suited',
    'make_configuration',
    'restriction_dim',
    'triples_from_hypersurface',
    'validate_triple',
    'vd_basis',
    'build_case1',
    'build_collinear',
    'build_extremal',
    'build_fermat',
    'build_intermediate',
    'enumerate_fermat_star_points',
    'quartic_fixture',
    'case3_check',
    'classify_three',
    'classify_two',
    'component_table',
    'normal_form_two',
    'tridiag_solve',
    'parse_config',
    'parse_line',
    'parse_point',
    'parse_poly',
    'parse_x_file',
    'render_json',
    'render_text',
]
