"""
Star Point Service
Star point tests by definition and by the polar criterion, star points on lines,
and the forced last star point on a line carrying d-1 of them
"""

import logging

from exceptions import KnownPointNotStar, LineInX, NotApplicable, RootsNotDistinct, SingularPoint, ZeroPolar
from models import GoodConeVerdict, Hypersurface, LineReport, StarVerdict
from services.geometry_service import geometry_service
from services.linalg import ExactMatrix
from services.polynomials import MultiPoly
from services.roots import binary_form_roots

logger = logging.getLogger(__name__)


def _line_parameter(line, point):
    """(s, u) with s*A + u*B proportional to the point"""
    field = line.field
    rows = [list(line.a.coords), list(line.b.coords)]
    system = ExactMatrix.from_columns(rows + [[-c for c in point.coords]], field)
    kernel = system.nullspace()
    if len(kernel) != 1 or kernel[0][2] == 0:
        raise NotApplicable(f"{point} is not on the line {line}")
    s, u, w = kernel[0]
    return s / w, u / w


class StarPointService:
    """Star point tests on a hypersurface"""

    def __init__(self, geometry=None):
        self.geometry = geometry or geometry_service

    def is_star_point(self, surface, point):
        """
        Test the definition: T_P(X) cut with X has multiplicity d at P

        Args:
            surface: Hypersurface
            point: ProjPoint on it

        Returns:
            StarVerdict

        Raises:
            NotOnHypersurface, SingularPoint
        """
        tangent = self.geometry.tangent_hyperplane(surface, point)
        restricted, chart = self.geometry.restrict_to_hyperplane(surface.equation, tangent)
        chart_point = chart.to_chart_point(point)
        if restricted.is_zero():
            raise NotApplicable(f"{surface} contains its tangent hyperplane at {point}")
        multiplicity = self.geometry.multiplicity_at(restricted, chart_point)
        if multiplicity == surface.degree:
            verdict = self.geometry.is_good_cone(restricted, chart_point)
        else:
            verdict = GoodConeVerdict.NOT_CONE
        is_star = multiplicity == surface.degree
        logger.debug(f"{point}: tangent {tangent}, multiplicity {multiplicity}, star={is_star}")
        return StarVerdict(
            point=point,
            is_star=is_star,
            tangent=tangent,
            cone_equation=restricted,
            chart=chart,
            multiplicity=multiplicity,
            good_cone=verdict,
        )

    def polar_hypersurface(self, surface, point):
        """Z(sum x_i dF/dX_i) for P = (x_0:...:x_N)"""
        f = surface.equation
        total = MultiPoly.zero(f.field, f.nvars)
        for x, partial in zip(point.coords, f.gradient()):
            if x != 0:
                total = total + partial * x
        if total.is_zero():
            raise ZeroPolar(f"the polar of {point} with respect to {surface} vanishes")
        return Hypersurface(total)

    def hyperplane_contained(self, surface, plane):
        restricted, _ = self.geometry.restrict_to_hyperplane(surface.equation, plane)
        return restricted.is_zero()

    def star_via_polar(self, surface, point):
        """P is a star point iff its polar contains T_P(X)"""
        tangent = self.geometry.tangent_hyperplane(surface, point)
        polar = self.polar_hypersurface(surface, point)
        return self.hyperplane_contained(polar, tangent)

    def star_points_on_line(self, surface, line, candidates=()):
        """
        Points of X on a line together with their star verdicts

        Args:
            surface: Hypersurface
            line: ProjLine
            candidates: points to test when the line lies in X

        Returns:
            LineReport
        """
        form = self.geometry.restrict_to_line(surface.equation, line)
        if form.is_zero():
            report = LineReport(line=line, line_in_x=True)
            for point in candidates:
                report.intersections.append((point, None, self._verdict_or_none(surface, point)))
            logger.info(f"{line} lies in X; tested {len(candidates)} supplied candidates")
            return report

        roots, unresolved = binary_form_roots(form)
        report = LineReport(line=line, line_in_x=False, unresolved=[u.degree for u in unresolved])
        for (s, u), multiplicity in roots:
            point = line.point(s, u)
            report.intersections.append((point, multiplicity, self._verdict_or_none(surface, point)))
        logger.info(f"{line}: {len(roots)} intersection points, {report.star_count} star")
        return report

    def _verdict_or_none(self, surface, point):
        try:
            return self.is_star_point(surface, point)
        except SingularPoint:
            return None

    def forced_dth_star(self, surface, line, known):
        """
        The last intersection point of a line carrying d-1 star points

        Args:
            surface: Hypersurface of degree d
            line: ProjLine not contained in X
            known: d-1 distinct star points on the line

        Returns:
            (ProjPoint, StarVerdict)

        Raises:
            LineInX, KnownPointNotStar, RootsNotDistinct
        """
        d = surface.degree
        if len(known) != d - 1:
            raise ValueError(f"need {d - 1} known star points, got {len(known)}")
        if len(set(known)) != len(known):
            raise RootsNotDistinct("the known star points are not distinct")
        form = self.geometry.restrict_to_line(surface.equation, line)
        if form.is_zero():
            raise LineInX(f"{line} lies in the hypersurface")

        parameters = []
        for point in known:
            if not line.contains(point) or not surface.contains(point):
                raise KnownPointNotStar(f"{point} is not on the line and the hypersurface")
            try:
                verdict = self.is_star_point(surface, point)
            except SingularPoint as e:
                raise KnownPointNotStar(str(e))
            if not verdict.is_star:
                raise KnownPointNotStar(f"{point} is not a star point")
            parameters.append(_line_parameter(line, point))

        roots, _ = binary_form_roots(form, known=parameters)
        known_set = set(known)
        remaining = [line.point(s, u) for (s, u), _ in roots]
        remaining = [p for p in remaining if p not in known_set]
        if len(remaining) != 1:
            raise RootsNotDistinct(f"expected one further intersection point, found {len(remaining)}")
        point = remaining[0]
        verdict = self.is_star_point(surface, point)
        assert verdict.is_star, f"forced point {point} failed the star test"
        logger.info(f"forced star point {point} on {line}")
        return point, verdict


# Singleton instance
star_point_service = StarPointService()


def is_star_point(surface, point):
    return star_point_service.is_star_point(surface, point)


def polar_hypersurface(surface, point):
    return star_point_service.polar_hypersurface(surface, point)


def hyperplane_contained(surface, plane):
    return star_point_service.hyperplane_contained(surface, plane)


def star_via_polar(surface, point):
    return star_point_service.star_via_polar(surface, point)


def star_points_on_line(surface, line, candidates=()):
    return star_point_service.star_points_on_line(surface, line, candidates)


def forced_dth_star(surface, line, known):
    return star_point_service.forced_dth_star(surface, line, known)
