"""
Selftest Service
Runs the acceptance battery at desk scale and reports one verdict per check
"""

import logging
import random

from config import Config
from exceptions import NotRootOfUnity
from models import ComponentKind, ProjPoint
from services import builders, dimensions
from services.classify_service import classify_service, t_invariant, tridiag_solve, tridiagonal_matrix
from services.configspace_service import config_space_service
from services.fields import CycloField, euler_phi
from services.starpoint_service import star_point_service
from services.univariate import UniPoly

logger = logging.getLogger(__name__)


def _fermat_off_star_points(d, count, rng):
    """Points (1 : xi : c : c*xi') of X_{d,3} with four nonzero coordinates"""
    field = CycloField(2 * d)
    points = []
    for _ in range(count):
        c = rng.choice([k for k in range(-5, 6) if k])
        xi = builders.fermat_xi(d, rng.randrange(d))
        xi2 = builders.fermat_xi(d, rng.randrange(d))
        points.append(ProjPoint.of(field, [field.one, xi, field.coerce(c), xi2 * c]))
    return points


class SelftestService:
    """The acceptance battery"""

    def __init__(self, seed=None):
        self.seed = seed if seed is not None else Config.DEFAULT_SEED

    def check_fermat(self, rng):
        counts = {}
        for d, N in ((3, 2), (3, 3), (4, 3), (3, 4), (5, 3)):
            surface, points = builders.build_fermat(d, N)
            assert len(points) == dimensions.fermat_star_count(N, d), f"count for ({d}, {N})"
            assert all(star_point_service.is_star_point(surface, p).is_star for p in points), f"({d}, {N})"
            counts[f"{d},{N}"] = len(points)
        surface, _ = builders.build_fermat(3, 3)
        for point in _fermat_off_star_points(3, 30, rng):
            assert not star_point_service.is_star_point(surface, point).is_star, f"{point} is star"
        return counts

    def check_fermat_t(self):
        """Fermat triples land in V_t with t = xi_a/xi_b and t = (xi_b/(xi_a xi_c))^2"""
        surface, _ = builders.build_fermat(3, 3)
        xi = [builders.fermat_xi(3, k) for k in range(3)]
        cases = []
        for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            points = [builders.fermat_point(3, 3, 0, 1, a), builders.fermat_point(3, 3, 0, 1, b),
                      builders.fermat_point(3, 3, 0, 2, c)]
            cases.append((points, xi[a] / xi[b]))
        for a, b, c in ((0, 1, 0), (1, 2, 1), (2, 1, 2)):
            points = [builders.fermat_point(3, 3, 0, 1, a), builders.fermat_point(3, 3, 0, 2, b),
                      builders.fermat_point(3, 3, 1, 2, c)]
            cases.append((points, (xi[b] / (xi[a] * xi[c])) ** 2))
        for points, expected in cases:
            triples = config_space_service.triples_from_hypersurface(surface, points)
            config = config_space_service.make_configuration(triples)
            assert t_invariant(config) == expected, f"t at {points}"
            label = classify_service.classify_three(config)
            assert label.kind is ComponentKind.VT, f"{points}: {label.kind}"
        return len(cases)

    def check_polar(self, rng):
        pairs = []
        for d, N in ((3, 3), (4, 3)):
            surface, points = builders.build_fermat(d, N)
            pairs += [(surface, p) for p in points]
            pairs += [(surface, p) for p in _fermat_off_star_points(d, 20, rng)]
        quartic, _, points = builders.quartic_fixture()
        pairs += [(quartic, p) for p in points]
        quadric = builders.build_quadric()
        pairs += [(quadric, p) for p in builders.quadric_points(20, rng)]
        for k in range(100):
            pairs.append(builders.random_star_sample(3 + k % 2, rng, star=k % 2 == 0))
        for surface, point in pairs:
            by_definition = star_point_service.is_star_point(surface, point).is_star
            assert by_definition == star_point_service.star_via_polar(surface, point), f"{point}"
        return len(pairs)

    def check_dimensions(self):
        families = []
        for d, N in ((3, 3), (4, 3), (3, 4)):
            surface, _ = builders.build_fermat(d, N)
            points = [builders.fermat_point(d, N, 0, 1, 0), builders.fermat_point(d, N, 0, 1, 1),
                      builders.fermat_point(d, N, 0, 2, 2)]
            families.append((f"fermat {d},{N}", surface, points))
            t = CycloField(6).zeta(3)
            surface = builders.build_case1(d, N, t, seed=self.seed)
            families.append((f"case1 {d},{N}", surface, builders.case1_points(t.field, N, t)))
        dims = {}
        for name, surface, points in families:
            triples = config_space_service.triples_from_hypersurface(surface, points, strict=False)
            for e in (1, 2, 3):
                config = config_space_service.make_configuration(triples[:e])
                system = config_space_service.vd_basis(config)
                report = config_space_service.dim_report(config, system)
                assert report.match, f"{name}, e={e}: {report.projective_dim} != {report.expected}"
                for plane in config_space_service.generic_hyperplanes(config, count=5, seed=self.seed):
                    restricted = config_space_service.restriction_dim(config, plane, system)
                    assert restricted.match, f"{name}, e={e}, {plane}: {restricted.dim} != {restricted.expected}"
                dims[f"{name} e={e}"] = report.projective_dim
        return dims

    def check_tridiagonal(self):
        t = UniPoly.x('t')
        for j in range(2, 9):
            det = tridiagonal_matrix(j, t).determinant()
            assert det == sum((t ** k for k in range(1, j)), t ** 0), f"det M_{j}"
        field = CycloField(60)
        for order in range(2, 7):
            root = field.zeta(order)
            for j in range(2, 9):
                solution = tridiag_solve(j, root)['solution']
                assert (solution is not None) == (j % order == 0), f"order {order}, j={j}"
        return True

    def check_collinear(self):
        result = {}
        for d in (3, 4):
            line, points, planes, cone = builders.collinear_fixture(d)
            surface = builders.build_collinear(d, 3, line, points, planes, cone, seed=self.seed)
            assert all(star_point_service.is_star_point(surface, p).is_star for p in points), f"d={d}"
            forced, _ = star_point_service.forced_dth_star(surface, line, points[:-1])
            assert forced == points[-1], f"forced point {forced}"
            result[d] = len(points)
        quartic, line, points = builders.quartic_fixture()
        report = star_point_service.star_points_on_line(quartic, line, points)
        assert report.line_in_x and report.star_count == 2, "quartic line"
        result['quartic'] = report.star_count
        surface, _ = builders.build_fermat(3, 3)
        for line in builders.fermat_cubic_lines():
            candidates = [line.point(1, 0), line.point(0, 1), line.point(1, 1), line.point(1, 2)]
            report = star_point_service.star_points_on_line(surface, line, candidates)
            assert report.line_in_x, f"{line} is not on the Fermat cubic"
            assert report.star_count <= 2, f"{line} carries {report.star_count} star points"
        result['fermat_lines'] = 27
        return result

    def check_components(self):
        dims = sorted(row.dimension for row in classify_service.component_table(3, 3))
        assert dims == [15, 15, 15, 16], f"{dims}"
        for d in range(3, 9):
            for N, expected in ((3, euler_phi(d) + euler_phi(d - 1)), (4, euler_phi(d))):
                rows = classify_service.component_table(d, N)
                assert len(rows) == 2 * d - 2, f"d={d}, N={N}"
                assert sum(r.is_expected for r in rows) == expected, f"expected count d={d}, N={N}"
                assert all(r.codim_bound_holds for r in rows), f"codimension bound d={d}, N={N}"
        return dims

    def check_case1_gate(self):
        field = CycloField(30)
        accepted = []
        for order in (2, 3, 5):
            t = field.zeta(order)
            try:
                builders.build_case1(3, 3, t, seed=self.seed)
                accepted.append(order)
            except NotRootOfUnity:
                pass
        assert accepted == [2, 3], f"accepted orders {accepted}"
        degenerate = builders.build_case1(3, 3, field.zeta(5), degenerate=True, seed=self.seed)
        assert builders.degenerate_certificate(degenerate) >= 2, "degenerate form is smooth at (0:0:1:0)"
        return accepted

    def check_extremal(self):
        assert dimensions.extremal_dimensions(5, 5)['locus_indep'] == 116
        assert dimensions.extremal_dimensions(5, 5)['locus_dep'] == 116
        for d in range(3, 9):
            for N in range(5, 8):
                assert dimensions.extremal_dimensions(N, d)['relation_holds'], f"({d}, {N})"
        return 116

    def run(self):
        """
        Run every check

        Returns:
            (all passed, dict name -> {'passed', 'detail'})
        """
        rng = random.Random(self.seed)
        checks = [
            ('fermat', lambda: self.check_fermat(rng)),
            ('fermat_t', self.check_fermat_t),
            ('polar', lambda: self.check_polar(rng)),
            ('dimensions', self.check_dimensions),
            ('tridiagonal', self.check_tridiagonal),
            ('collinear', self.check_collinear),
            ('components', self.check_components),
            ('case1_gate', self.check_case1_gate),
            ('extremal', self.check_extremal),
        ]
        results = {}
        for name, check in checks:
            try:
                detail = check()
                results[name] = {'passed': True, 'detail': _plain(detail)}
                logger.info(f"selftest {name}: passed")
            except Exception as e:
                logger.error(f"selftest {name} failed: {e}", exc_info=True)
                results[name] = {'passed': False, 'detail': f"{type(e).__name__}: {e}"}
        passed = all(r['passed'] for r in results.values())
        return passed, results


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def run_selftest(seed=None):
    return SelftestService(seed).run()
