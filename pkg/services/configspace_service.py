"""
Configuration Space Service
Triples (plane, vertex, cone), the linear system V_d(L) they cut out, suitedness
with seeded witnesses, and the dimension checks on V_d(L) and its restrictions
"""

import logging
import random

from config import Config
from exceptions import (
    EmptySystem, NotACone, NotApplicable, PointOnPlane, VertexNotOnPlane, WrongDegree, BadCone,
)
from models import (
    CandidateSpace, Configuration, DimReport, GoodConeVerdict, Hyperplane, LinearSystem,
    RestrictionReport, StarTriple, SuitedReport,
)
from services.dimensions import linear_system_dim, restriction_expected_dim
from services.geometry_service import Chart, geometry_service, vertex_frame
from services.linalg import ExactMatrix
from services.polynomials import MultiPoly, monomials

logger = logging.getLogger(__name__)


def _evaluate_monomial(exp, coords, field):
    value = field.one
    for k, x in zip(exp, coords):
        if k:
            value = value * x ** k
    return value


def _restriction_columns(chart, ambient_monos, chart_monos):
    """Coefficient vectors of every ambient monomial restricted to the chart"""
    images = chart.images()
    field = chart.field
    index = {exp: k for k, exp in enumerate(chart_monos)}
    powers = [{} for _ in images]
    columns = []
    for exp in ambient_monos:
        term = None
        for i, k in enumerate(exp):
            if not k:
                continue
            if k not in powers[i]:
                powers[i][k] = images[i] ** k
            term = powers[i][k] if term is None else term * powers[i][k]
        column = [field.zero] * len(chart_monos)
        if term is not None:
            for e, c in term.terms.items():
                column[index[e]] = c
        columns.append(column)
    return columns


class _TripleConstraints:
    """Restriction matrix R and normalized cone vector c of one triple"""

    def __init__(self, triple, ambient_monos):
        self.triple = triple
        self.chart = Chart(triple.plane)
        field = triple.plane.field
        nvars = len(triple.plane.coeffs) - 1
        chart_monos = monomials(nvars, triple.degree)
        columns = _restriction_columns(self.chart, ambient_monos, chart_monos)
        self.rows = [[col[k] for col in columns] for k in range(len(chart_monos))]
        self.cone = triple.chart_cone.coefficient_vector(chart_monos)
        self.lead = next(k for k, c in enumerate(self.cone) if c != 0)
        self.field = field

    def equations(self):
        c, l0, R = self.cone, self.lead, self.rows
        out = []
        for k in range(len(c)):
            if k == l0:
                continue
            out.append([c[l0] * a - c[k] * b for a, b in zip(R[k], R[l0])])
        return out

    def scale(self, vector):
        """lambda(u): the factor with R u = lambda c"""
        value = sum((a * b for a, b in zip(self.rows[self.lead], vector)), self.field.zero)
        return value / self.cone[self.lead]


class ConfigSpaceService:
    """Validation of triples and the linear algebra of V_d(L)"""

    def __init__(self, geometry=None, seed=None):
        self.geometry = geometry or geometry_service
        self.seed = seed if seed is not None else Config.DEFAULT_SEED

    # Triples and configurations

    def validate_triple(self, plane, vertex, cone, degree, strict=True):
        """
        Check and normalize a triple (plane, vertex, cone)

        Args:
            plane: Hyperplane
            vertex: ProjPoint
            cone: MultiPoly, either ambient (N+1 variables) or in the plane's chart
            degree: d
            strict: reject cones singular outside their vertex

        Returns:
            StarTriple

        Raises:
            VertexNotOnPlane, NotACone, BadCone, WrongDegree
        """
        if not plane.contains(vertex):
            raise VertexNotOnPlane(f"{vertex} is not on {plane}")
        chart = Chart(plane)
        if cone.nvars == chart.ambient_vars:
            chart_cone = chart.restrict(cone)
        elif cone.nvars == chart.nvars:
            chart_cone = cone
        else:
            raise WrongDegree(f"cone has {cone.nvars} variables, plane lives in P^{chart.nvars}")
        if chart_cone.is_zero():
            raise NotACone(f"the cone vanishes on all of {plane}")
        if chart_cone.homogeneous_degree() != degree:
            raise WrongDegree(f"cone {chart_cone} is not homogeneous of degree {degree}")

        chart_vertex = chart.to_chart_point(vertex)
        if chart_cone.evaluate(chart_vertex.coords) != 0:
            raise NotACone(f"the cone does not pass through {vertex}")
        if not self.geometry.is_cone_with_vertex(chart_cone, chart_vertex):
            raise NotACone(f"{chart_cone} is not a cone with vertex {vertex}")

        verdict = self.geometry.is_good_cone(chart_cone, chart_vertex)
        if verdict is GoodConeVerdict.SINGULAR_OUTSIDE_VERTEX and strict:
            raise BadCone(f"the cone {chart_cone} is singular outside {vertex}")

        chart_cone = chart_cone.monic()
        return StarTriple(
            plane=plane,
            vertex=vertex,
            cone=chart.lift(chart_cone),
            chart_cone=chart_cone,
            degree=degree,
            good_cone=verdict,
        )

    def triples_from_hypersurface(self, surface, points, strict=True):
        """The triples (T_P X, P, T_P X cut with X) at the given points"""
        triples = []
        for point in points:
            tangent = self.geometry.tangent_hyperplane(surface, point)
            section, _ = self.geometry.restrict_to_hyperplane(surface.equation, tangent)
            triples.append(self.validate_triple(tangent, point, section, surface.degree, strict))
        return triples

    def make_configuration(self, triples, ambient_dim=None, degree=None, field=None):
        """Configuration with its incidence table; an empty one needs N, d and the field"""
        triples = tuple(triples)
        if not triples:
            if ambient_dim is None or degree is None or field is None:
                raise NotApplicable("an empty configuration needs N, d and a field")
            return Configuration(triples=(), degree=degree, incidence=(), ambient_dim=ambient_dim, field=field)
        degree = triples[0].degree
        size = len(triples[0].plane.coeffs)
        for t in triples:
            if t.degree != degree:
                raise WrongDegree(f"mixed degrees {degree} and {t.degree}")
            if len(t.plane.coeffs) != size:
                raise WrongDegree("triples live in different projective spaces")
        incidence = tuple(
            tuple(triples[j].plane.contains(triples[i].vertex) for j in range(len(triples)))
            for i in range(len(triples))
        )
        return Configuration(
            triples=triples, degree=degree, incidence=incidence,
            ambient_dim=size - 1, field=triples[0].plane.field,
        )

    # V_d(L)

    def _constraints(self, config, ambient_monos):
        return [_TripleConstraints(t, ambient_monos) for t in config.triples]

    def vd_basis(self, config):
        """
        Basis of V_d(L): forms whose restriction to each Pi_i is a multiple of C_i

        Returns:
            LinearSystem
        """
        field = config.field
        N = config.ambient_dim
        d = config.degree
        ambient = monomials(N + 1, d)
        rows = []
        for data in self._constraints(config, ambient):
            rows.extend(data.equations())
        matrix = ExactMatrix(rows, len(ambient), field)
        vectors = matrix.nullspace()
        basis = [MultiPoly.from_vector(field, N + 1, ambient, v) for v in vectors]
        logger.info(f"V_d(L) for {config.size} triples, N={N}, d={d}: {len(rows)} equations, dimension {len(basis)}")
        return LinearSystem(degree=d, ambient_dim=N, monomials=ambient, basis=basis, vectors=vectors)

    def _gradient_rows(self, point, ambient):
        """Rows k: the functional u -> dF_u/dX_k (P) on coefficient vectors"""
        field = point.field
        rows = []
        for k in range(len(point.coords)):
            row = []
            for exp in ambient:
                if exp[k] == 0:
                    row.append(field.zero)
                    continue
                lowered = list(exp)
                lowered[k] -= 1
                row.append(_evaluate_monomial(lowered, point.coords, field) * exp[k])
            rows.append(row)
        return rows

    def is_suited(self, config, system=None, seed=None, extra_points=()):
        """
        Decide suitedness and produce a seeded witness member of V_d(L)

        Args:
            config: Configuration
            system: precomputed LinearSystem (optional)
            seed: witness search seed
            extra_points: further points where the witness should be smooth if it passes through them

        Returns:
            SuitedReport

        Raises:
            EmptySystem: V_d(L) = 0
        """
        seed = self.seed if seed is None else seed
        system = system or self.vd_basis(config)
        if not system.basis:
            raise EmptySystem("V_d(L) is zero")
        field = config.field
        ambient = system.monomials
        size = len(system.basis)
        constraints = self._constraints(config, ambient)

        # Functionals on the coefficients a_j of the basis
        lambdas = [[data.scale(v) for v in system.vectors] for data in constraints]
        nonzero = [any(x != 0 for x in row) for row in lambdas]
        suited = all(nonzero)

        gradients = []
        forced_singular = []
        for i, triple in enumerate(config.triples):
            rows = self._gradient_rows(triple.vertex, ambient)
            on_basis = [[sum((a * b for a, b in zip(r, v)), field.zero) for v in system.vectors] for r in rows]
            usable = next((r for r in on_basis if any(x != 0 for x in r)), None)
            if usable is None:
                forced_singular.append(i)
            else:
                gradients.append(usable)
        if forced_singular:
            logger.warning(f"every member of V_d(L) is singular at vertices {forced_singular}")

        if not suited:
            logger.info(f"configuration not suited: functionals {nonzero}")
            return SuitedReport(
                suited=False, witness=None, witness_coefficients=[], seed=seed,
                probe_smooth=False, forced_singular=forced_singular, functionals_nonzero=nonzero,
            )

        functionals = lambdas + gradients
        coeffs = self._search(functionals, size, len(config.triples), seed)
        if coeffs is None:
            coeffs = self._search(lambdas, size, len(config.triples), seed)
        vector = [sum((a * v[m] for a, v in zip(coeffs, system.vectors)), field.zero) for m in range(len(ambient))]
        witness = MultiPoly.from_vector(field, config.ambient_dim + 1, ambient, vector)

        probe_smooth = not forced_singular and self._probe_smooth(witness, config, extra_points)
        logger.info(f"suited; witness probe-smooth={probe_smooth}")
        return SuitedReport(
            suited=True, witness=witness, witness_coefficients=coeffs, seed=seed,
            probe_smooth=probe_smooth, forced_singular=forced_singular, functionals_nonzero=nonzero,
        )

    def _search(self, functionals, size, count, seed):
        """Coefficients where every functional is nonzero, or None if one vanishes identically"""
        if any(all(x == 0 for x in f) for f in functionals):
            return None

        def good(coeffs):
            return all(sum((a * x for a, x in zip(coeffs, f) if x != 0), 0) != 0 for f in functionals)

        rng = random.Random(seed)
        bound = Config.WITNESS_COEFF_RANGE
        for _ in range(count * size):
            coeffs = [rng.randint(-bound, bound) for _ in range(size)]
            if good(coeffs):
                return coeffs
        # Moment curve: each functional is a nonzero polynomial in k of degree < size
        k = 1
        while True:
            coeffs = [k ** j for j in range(size)]
            if good(coeffs):
                return coeffs
            k += 1

    def _probe_smooth(self, witness, config, extra_points):
        gradient = witness.gradient()
        for triple in config.triples:
            values = [g.evaluate(triple.vertex.coords) for g in gradient]
            if all(v == 0 for v in values):
                return False
            if Hyperplane.of(witness.field, values) != triple.plane:
                return False
        for point in extra_points:
            if witness.evaluate(point.coords) != 0:
                continue
            if all(g.evaluate(point.coords) == 0 for g in gradient):
                return False
        return True

    # Dimension checks

    def dim_report(self, config, system=None):
        system = system or self.vd_basis(config)
        try:
            suited = self.is_suited(config, system).suited
        except EmptySystem:
            suited = False
        expected = linear_system_dim(config.ambient_dim, config.degree, config.size)
        return DimReport(
            projective_dim=system.projective_dim,
            expected=expected,
            match=system.projective_dim == expected,
            suited=suited,
        )

    def _restricted_vectors(self, system, chart):
        chart_monos = monomials(chart.nvars, system.degree)
        return chart_monos, [chart.restrict(g).coefficient_vector(chart_monos) for g in system.basis]

    def restriction_dim(self, config, plane, system=None):
        """
        Dimension of the image of P_d(L) in the forms on a hyperplane avoiding all P_i

        Returns:
            RestrictionReport

        Raises:
            PointOnPlane
        """
        for i, triple in enumerate(config.triples):
            if plane.contains(triple.vertex):
                raise PointOnPlane(f"vertex {i + 1} lies on {plane}")
        system = system or self.vd_basis(config)
        chart = Chart(plane)
        field = config.field
        chart_monos, image = self._restricted_vectors(system, chart)
        rank = ExactMatrix(image, len(chart_monos), field).rank() if image else 0

        d, e, N = config.degree, config.size, config.ambient_dim
        contains = True
        if e <= d and image:
            product = MultiPoly.constant(field, chart.nvars, 1)
            for triple in config.triples:
                product = product * chart.restrict(triple.plane.linear_form)
            extra = [
                (product * MultiPoly.monomial(field, exp)).coefficient_vector(chart_monos)
                for exp in monomials(chart.nvars, d - e)
            ]
            contains = ExactMatrix(image + extra, len(chart_monos), field).rank() == rank
        report = RestrictionReport(
            plane=plane,
            dim=rank - 1,
            expected=restriction_expected_dim(N, d, e),
            contains_sublinear=contains,
        )
        logger.info(f"restriction to {plane}: dim {report.dim}, expected {report.expected}")
        return report

    def generic_hyperplanes(self, config, count=None, seed=None):
        """Seeded random hyperplanes avoiding every vertex"""
        count = Config.GENERIC_PLANE_TRIALS if count is None else count
        rng = random.Random(self.seed if seed is None else seed)
        field = config.field
        size = config.ambient_dim + 1
        bound = Config.WITNESS_COEFF_RANGE
        planes = []
        while len(planes) < count:
            coeffs = [rng.randint(-bound, bound) for _ in range(size)]
            if not any(coeffs):
                continue
            plane = Hyperplane.of(field, coeffs)
            if any(plane.contains(t.vertex) for t in config.triples) or plane in planes:
                continue
            planes.append(plane)
        return planes

    def extend_candidates(self, config, plane, point):
        """
        Cones in `plane` with vertex `point` that extend the configuration

        Returns:
            CandidateSpace
        """
        if not plane.contains(point):
            raise VertexNotOnPlane(f"{point} is not on {plane}")
        for i, triple in enumerate(config.triples):
            if plane.contains(triple.vertex):
                raise PointOnPlane(f"vertex {i + 1} lies on {plane}")
            if triple.plane.contains(point):
                raise NotApplicable(f"{point} lies on plane {i + 1}")
        field = plane.field
        d = config.degree
        chart = Chart(plane)
        chart_monos = monomials(chart.nvars, d)
        if config.triples:
            system = self.vd_basis(config)
            _, image = self._restricted_vectors(system, chart)
            rows, pivots, _ = ExactMatrix(image, len(chart_monos), field).echelon() if image else ([], [], 1)
            spanning = rows[:len(pivots)]
        else:
            spanning = ExactMatrix.identity(len(chart_monos), field).entries
        forms = [MultiPoly.from_vector(field, chart.nvars, chart_monos, v) for v in spanning]

        chart_point = chart.to_chart_point(point)
        frame = vertex_frame(chart_point)
        moved = [g.substitute_linear(frame) for g in forms]
        low = [exp for exp in chart_monos if exp[0] >= 1]
        conditions = [[h.coefficient(exp) for h in moved] for exp in low]
        if forms:
            combos = ExactMatrix(conditions, len(forms), field).nullspace()
        else:
            combos = []

        chart_basis = []
        for combo in combos:
            g = MultiPoly.zero(field, chart.nvars)
            for a, form in zip(combo, forms):
                if a != 0:
                    g = g + form * a
            if not g.is_zero():
                chart_basis.append(g.monic())
        verdicts = [self.geometry.is_good_cone(g, chart_point) for g in chart_basis]
        logger.info(f"extension candidates at {point}: dimension {len(chart_basis)}")
        return CandidateSpace(
            plane=plane,
            point=point,
            chart_basis=chart_basis,
            ambient_basis=[chart.lift(g) for g in chart_basis],
            verdicts=verdicts,
        )


# Singleton instance
config_space_service = ConfigSpaceService()


def validate_triple(plane, vertex, cone, degree, strict=True):
    return config_space_service.validate_triple(plane, vertex, cone, degree, strict)


def triples_from_hypersurface(surface, points, strict=True):
    return config_space_service.triples_from_hypersurface(surface, points, strict)


def make_configuration(triples, ambient_dim=None, degree=None, field=None):
    return config_space_service.make_configuration(triples, ambient_dim, degree, field)


def vd_basis(config):
    return config_space_service.vd_basis(config)


def is_suited(config, system=None, seed=None, extra_points=()):
    return config_space_service.is_suited(config, system, seed, extra_points)


def dim_report(config):
    return config_space_service.dim_report(config)


def restriction_dim(config, plane):
    return config_space_service.restriction_dim(config, plane)


def generic_hyperplanes(config, count=None, seed=None):
    return config_space_service.generic_hyperplanes(config, count, seed)


def extend_candidates(config, plane, point):
    return config_space_service.extend_candidates(config, plane, point)
