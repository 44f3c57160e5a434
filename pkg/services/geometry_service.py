"""
Geometry Service
Charts on hyperplanes, restrictions, multiplicity at a point and the cone tests
"""

import logging
import random
from math import comb

from config import Config
from exceptions import NotApplicable, NotOnHypersurface, SingularPoint, ZeroPolynomial
from models import GoodConeVerdict, Hyperplane, ProjPoint
from services.linalg import ExactMatrix
from services.polynomials import BinaryForm, MultiPoly, monomials
from services.roots import binary_form_roots

logger = logging.getLogger(__name__)


class Chart:
    """Coordinates on a hyperplane obtained by eliminating its pivot variable

    The chart variables Y_0..Y_{N-1} are the ambient variables other than the
    pivot, in their original order.
    """

    def __init__(self, hyperplane):
        self.hyperplane = hyperplane
        self.pivot = hyperplane.pivot
        self.ambient_vars = len(hyperplane.coeffs)
        self.others = [i for i in range(self.ambient_vars) if i != self.pivot]

    @property
    def field(self):
        return self.hyperplane.field

    @property
    def nvars(self):
        return self.ambient_vars - 1

    def images(self):
        """X_i as polynomials in the chart variables"""
        field = self.field
        n = self.nvars
        images = []
        for i in range(self.ambient_vars):
            if i == self.pivot:
                coeffs = [-self.hyperplane.coeffs[j] for j in self.others]
                images.append(MultiPoly.from_linear(field, coeffs))
            else:
                images.append(MultiPoly.variable(field, n, self.others.index(i)))
        return images

    def to_chart_point(self, point):
        if not self.hyperplane.contains(point):
            raise NotApplicable(f"{point} is not on {self.hyperplane}")
        return ProjPoint.of(self.field, [point.coords[i] for i in self.others])

    def from_chart_point(self, point):
        coords = [self.field.zero] * self.ambient_vars
        for k, i in enumerate(self.others):
            coords[i] = point.coords[k]
        coords[self.pivot] = -sum(
            (self.hyperplane.coeffs[i] * coords[i] for i in self.others), self.field.zero
        )
        return ProjPoint.of(self.field, coords)

    def restrict(self, poly):
        return poly.compose(self.images())

    def lift(self, poly):
        """The ambient form that agrees with `poly` on the hyperplane and ignores the pivot"""
        return poly.embed(self.ambient_vars, self.others)

    def __eq__(self, other):
        return isinstance(other, Chart) and other.hyperplane == self.hyperplane

    def __hash__(self):
        return hash(self.hyperplane)

    def __repr__(self):
        return f'<Chart on {self.hyperplane}, pivot X{self.pivot}>'


def complete_basis(vectors, size, field):
    """Extend independent vectors to a basis with standard vectors in index order"""
    basis = [list(v) for v in vectors]
    rank = ExactMatrix(basis, size, field).rank() if basis else 0
    if rank != len(basis):
        raise NotApplicable("vectors to complete are dependent")
    for i in range(size):
        if len(basis) == size:
            break
        e = [field.zero] * size
        e[i] = field.one
        if ExactMatrix(basis + [e], size, field).rank() > len(basis):
            basis.append(e)
    return basis


def vertex_frame(point):
    """Invertible matrix whose first column is the point"""
    field = point.field
    columns = complete_basis([point.coords], len(point.coords), field)
    return ExactMatrix.from_columns(columns, field)


def restrict_to_line_images(line, field):
    s_u = []
    for a, b in zip(line.a.coords, line.b.coords):
        s_u.append(MultiPoly.from_linear(field, [a, b]))
    return s_u


class GeometryService:
    """Tangent hyperplanes, restrictions, multiplicities and cone verdicts"""

    def __init__(self, probe_count=None, macaulay_max_columns=None, seed=None):
        self.probe_count = probe_count if probe_count is not None else Config.PROBE_COUNT
        self.macaulay_max_columns = (
            macaulay_max_columns if macaulay_max_columns is not None else Config.MACAULAY_MAX_COLUMNS
        )
        self.seed = seed if seed is not None else Config.DEFAULT_SEED

    def tangent_hyperplane(self, surface, point):
        """
        Tangent hyperplane Z(sum dF/dX_i(P) X_i)

        Args:
            surface: Hypersurface
            point: ProjPoint on it

        Returns:
            Hyperplane

        Raises:
            NotOnHypersurface, SingularPoint
        """
        f = surface.equation
        if f.evaluate(point.coords) != 0:
            raise NotOnHypersurface(f"{point} is not on {surface}")
        gradient = [g.evaluate(point.coords) for g in f.gradient()]
        if all(g == 0 for g in gradient):
            raise SingularPoint(f"{surface} is singular at {point}")
        return Hyperplane.of(f.field, gradient)

    def restrict_to_hyperplane(self, poly, plane):
        """Restriction of a form to a hyperplane, as a form in the plane's chart

        Returns:
            (restricted MultiPoly, Chart)
        """
        chart = Chart(plane)
        return chart.restrict(poly), chart

    def multiplicity_at(self, poly, point):
        """Multiplicity of Z(poly) at a point; 0 off the zero set"""
        if poly.is_zero():
            raise ZeroPolynomial("multiplicity of the zero polynomial")
        if poly.evaluate(point.coords) != 0:
            return 0
        degree = poly.degree
        moved = poly.substitute_linear(vertex_frame(point))
        return min(degree - exp[0] for exp in moved.terms)

    def is_cone_with_vertex(self, poly, point):
        if poly.is_zero():
            raise ZeroPolynomial("the zero polynomial is not a cone")
        if poly.evaluate(point.coords) != 0:
            raise NotApplicable(f"{point} is not on Z({poly})")
        return self.multiplicity_at(poly, point) == poly.degree

    def is_cone_by_derivative(self, poly, point):
        """Cone test through the directional derivative along the vertex"""
        if poly.is_zero():
            raise ZeroPolynomial("the zero polynomial is not a cone")
        total = MultiPoly.zero(poly.field, poly.nvars)
        for p, g in zip(point.coords, poly.gradient()):
            if p != 0:
                total = total + g * p
        return total.is_zero()

    def cone_base(self, poly, point):
        """Move the vertex to e_0 and drop the vertex variable"""
        moved = poly.substitute_linear(vertex_frame(point))
        if moved.depends_on(0):
            raise NotApplicable(f"Z({poly}) is not a cone with vertex {point}")
        return moved.drop_variables([0])

    def is_good_cone(self, poly, point):
        """
        Decide whether Z(poly) is a cone with vertex P, smooth outside P

        Returns:
            GoodConeVerdict
        """
        if poly.is_zero():
            raise ZeroPolynomial("the zero polynomial is not a cone")
        if poly.evaluate(point.coords) != 0 or not self.is_cone_with_vertex(poly, point):
            return GoodConeVerdict.NOT_CONE
        base = self.cone_base(poly, point)
        verdict = self._base_verdict(base)
        logger.debug(f"good-cone verdict {verdict.value} for base in {base.nvars} variables")
        if verdict is GoodConeVerdict.UNKNOWN:
            logger.warning(f"Smoothness of the cone Z({poly}) outside {point} is undecided")
        return verdict

    def _base_verdict(self, base):
        m = base.nvars
        d = base.degree
        if m <= 1 or d == 1:
            return GoodConeVerdict.GOOD
        if m == 2:
            return self._binary_verdict(base)
        columns = comb(m * (d - 2) + 1 + m - 1, m - 1)
        if columns <= self.macaulay_max_columns:
            return self._macaulay_verdict(base)
        return self._probe_verdict(base)

    def _binary_verdict(self, base):
        form = BinaryForm.from_poly(base, base.degree)
        poly = form.dehomogenized()
        if form.infinity_multiplicity() > 1:
            return GoodConeVerdict.SINGULAR_OUTSIDE_VERTEX
        if poly.degree >= 1 and poly.gcd(poly.derivative()).degree > 0:
            return GoodConeVerdict.SINGULAR_OUTSIDE_VERTEX
        return GoodConeVerdict.GOOD

    def _macaulay_verdict(self, base):
        """Partials have no common zero iff their Macaulay matrix has full column rank"""
        m = base.nvars
        d = base.degree
        top = m * (d - 2) + 1
        columns = monomials(m, top)
        index = {exp: k for k, exp in enumerate(columns)}
        rows = []
        for partial in base.gradient():
            if partial.is_zero():
                continue
            for shift in monomials(m, top - (d - 1)):
                row = [base.field.zero] * len(columns)
                for exp, c in partial.terms.items():
                    row[index[tuple(a + b for a, b in zip(exp, shift))]] = c
                rows.append(row)
        logger.debug(f"Macaulay matrix {len(rows)}x{len(columns)}")
        if not rows:
            return GoodConeVerdict.SINGULAR_OUTSIDE_VERTEX
        rank = ExactMatrix(rows, len(columns), base.field).rank()
        if rank == len(columns):
            return GoodConeVerdict.GOOD
        return GoodConeVerdict.SINGULAR_OUTSIDE_VERTEX

    def _probe_verdict(self, base):
        field = base.field
        m = base.nvars
        gradient = base.gradient()

        def singular_at(coords):
            return any(c != 0 for c in coords) and all(g.evaluate(coords) == 0 for g in gradient)

        units = []
        for i in range(m):
            e = [field.zero] * m
            e[i] = field.one
            units.append(e)
        probes = list(units)
        for i in range(m):
            for j in range(i + 1, m):
                probes.append([a + b for a, b in zip(units[i], units[j])])
        for coords in probes:
            if singular_at(coords):
                return GoodConeVerdict.SINGULAR_OUTSIDE_VERTEX

        rng = random.Random(self.seed)
        bound = Config.WITNESS_COEFF_RANGE
        for _ in range(self.probe_count):
            a = [field.coerce(rng.randint(-bound, bound)) for _ in range(m)]
            b = [field.coerce(rng.randint(-bound, bound)) for _ in range(m)]
            if ExactMatrix([a, b], m, field).rank() < 2:
                continue
            images = [MultiPoly.from_linear(field, [x, y]) for x, y in zip(a, b)]
            form = base.compose(images)
            if form.is_zero():
                continue
            roots, _ = binary_form_roots(BinaryForm.from_poly(form, base.degree))
            for (s, u), _ in roots:
                coords = [s * x + u * y for x, y in zip(a, b)]
                if singular_at(coords):
                    return GoodConeVerdict.SINGULAR_OUTSIDE_VERTEX
        logger.debug(f"probe battery of {len(probes)} points and {self.probe_count} lines found no singularity")
        return GoodConeVerdict.UNKNOWN

    def cone_through(self, plane, vertex, base):
        """
        Ambient form of the cone in `plane` with the given vertex over `base`

        Args:
            plane: Hyperplane containing the vertex
            vertex: ProjPoint
            base: MultiPoly in N-1 variables

        Returns:
            MultiPoly in N+1 variables
        """
        field = plane.field
        size = len(plane.coeffs)
        if not plane.contains(vertex):
            raise NotApplicable(f"{vertex} is not on {plane}")
        if base.nvars != size - 2:
            raise ValueError(f"base must have {size - 2} variables, got {base.nvars}")
        in_plane = ExactMatrix([plane.coeffs], size, field).nullspace()
        basis = [list(vertex.coords)]
        for v in in_plane:
            if len(basis) == size - 1:
                break
            if ExactMatrix(basis + [v], size, field).rank() > len(basis):
                basis.append(v)
        normal = [field.zero] * size
        normal[plane.pivot] = field.one
        basis.append(normal)
        inverse = ExactMatrix.from_columns(basis, field).inverse()
        coordinates = [MultiPoly.from_linear(field, inverse.row(k)) for k in range(1, size - 1)]
        return base.compose(coordinates)

    def restrict_to_line(self, poly, line):
        """poly(s*A + u*B) as a binary form of degree deg(poly)"""
        field = poly.field
        restricted = poly.compose(restrict_to_line_images(line, field))
        return BinaryForm.from_poly(restricted, poly.degree)


# Singleton instance
geometry_service = GeometryService()


def tangent_hyperplane(surface, point):
    return geometry_service.tangent_hyperplane(surface, point)


def restrict_to_hyperplane(poly, plane):
    return geometry_service.restrict_to_hyperplane(poly, plane)


def multiplicity_at(poly, point):
    return geometry_service.multiplicity_at(poly, point)


def is_cone_with_vertex(poly, point):
    return geometry_service.is_cone_with_vertex(poly, point)


def is_cone_by_derivative(poly, point):
    return geometry_service.is_cone_by_derivative(poly, point)


def is_good_cone(poly, point):
    return geometry_service.is_good_cone(poly, point)


def cone_through(plane, vertex, base):
    return geometry_service.cone_through(plane, vertex, base)


def restrict_to_line(poly, line):
    return geometry_service.restrict_to_line(poly, line)
