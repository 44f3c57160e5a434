"""
Domain models for the star point toolkit
Points, hyperplanes, lines, hypersurfaces, configurations and report records
"""

from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from config import Config
from exceptions import NotApplicable, WrongDegree, ZeroPolynomial


def _first_nonzero(values):
    return next((i for i, x in enumerate(values) if x != 0), None)


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^N, first nonzero coordinate scaled to 1"""
    coords: Tuple

    @classmethod
    def of(cls, field, coords):
        coords = [field.coerce(c) for c in coords]
        lead = _first_nonzero(coords)
        if lead is None:
            raise NotApplicable("the zero vector is not a projective point")
        scale = coords[lead]
        if scale != 1:
            inv = scale.inverse()
            coords = [c * inv for c in coords]
        return cls(tuple(coords))

    @property
    def field(self):
        return self.coords[0].field

    @property
    def ambient_dim(self):
        return len(self.coords) - 1

    def support(self):
        return [i for i, c in enumerate(self.coords) if c != 0]

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f'<ProjPoint {self}>'


@dataclass(frozen=True)
class Hyperplane:
    """Z(sum a_i X_i), coefficients scaled so the first nonzero one is 1"""
    coeffs: Tuple

    @classmethod
    def of(cls, field, coeffs):
        try:
            point = ProjPoint.of(field, coeffs)
        except NotApplicable:
            raise ZeroPolynomial("a hyperplane needs a nonzero linear form")
        return cls(point.coords)

    @classmethod
    def from_form(cls, poly):
        if poly.is_zero():
            raise ZeroPolynomial("a hyperplane needs a nonzero linear form")
        if poly.homogeneous_degree() != 1:
            raise WrongDegree(f"{poly} is not a linear form")
        coeffs = [poly.field.zero] * poly.nvars
        for exp, c in poly.terms.items():
            coeffs[exp.index(1)] = c
        return cls.of(poly.field, coeffs)

    @property
    def field(self):
        return self.coeffs[0].field

    @property
    def pivot(self):
        return _first_nonzero(self.coeffs)

    @property
    def ambient_dim(self):
        return len(self.coeffs) - 1

    @property
    def linear_form(self):
        from services.polynomials import MultiPoly
        return MultiPoly.from_linear(self.field, self.coeffs)

    def value(self, point):
        total = self.field.zero
        for a, p in zip(self.coeffs, point.coords):
            if a != 0 and p != 0:
                total = total + a * p
        return total

    def contains(self, point):
        return self.value(point) == 0

    def __str__(self):
        return str(self.linear_form)

    def __repr__(self):
        return f'<Hyperplane {self}>'


@dataclass(frozen=True)
class ProjLine:
    """The line {s*A + u*B}"""
    a: ProjPoint
    b: ProjPoint

    def __post_init__(self):
        if self.a == self.b:
            raise NotApplicable("a line needs two distinct points")
        if len(self.a.coords) != len(self.b.coords):
            raise NotApplicable("line points live in different spaces")

    @property
    def field(self):
        return self.a.field

    def point(self, s, u):
        return ProjPoint.of(self.field, [s * x + u * y for x, y in zip(self.a.coords, self.b.coords)])

    def contains(self, point):
        from services.linalg import ExactMatrix
        rows = [self.a.coords, self.b.coords, point.coords]
        return ExactMatrix(rows, len(point.coords), self.field).rank() == 2

    def __str__(self):
        return f"{self.a};{self.b}"

    def __repr__(self):
        return f'<ProjLine {self}>'


@dataclass(frozen=True)
class Hypersurface:
    """Z(F) for a nonzero homogeneous form F"""
    equation: object

    def __post_init__(self):
        if self.equation.is_zero():
            raise ZeroPolynomial("a hypersurface needs a nonzero equation")
        if self.equation.homogeneous_degree() is None:
            raise WrongDegree("the equation of a hypersurface must be homogeneous")

    @property
    def field(self):
        return self.equation.field

    @property
    def degree(self):
        return self.equation.degree

    @property
    def ambient_dim(self):
        return self.equation.nvars - 1

    def contains(self, point):
        return self.equation.evaluate(point.coords) == 0

    def __str__(self):
        return f"Z({self.equation})"

    def __repr__(self):
        return f'<Hypersurface {self}>'


class GoodConeVerdict(Enum):
    GOOD = 'Good'
    NOT_CONE = 'NotCone'
    SINGULAR_OUTSIDE_VERTEX = 'SingularOutsideVertex'
    UNKNOWN = 'Unknown'


@dataclass
class StarVerdict:
    """Outcome of the star point test at one point"""
    point: ProjPoint
    is_star: bool
    tangent: Hyperplane
    cone_equation: object
    chart: object
    multiplicity: int
    good_cone: GoodConeVerdict

    def to_dict(self):
        return {
            'point': str(self.point),
            'is_star': self.is_star,
            'tangent': str(self.tangent),
            'cone': str(self.chart.lift(self.cone_equation)),
            'multiplicity': self.multiplicity,
            'good_cone': self.good_cone.value,
        }


@dataclass
class LineReport:
    """Intersection of a hypersurface with a line, with per-point verdicts"""
    line: ProjLine
    line_in_x: bool
    intersections: List = dc_field(default_factory=list)  # (point, multiplicity, verdict or None)
    unresolved: List[int] = dc_field(default_factory=list)

    @property
    def star_points(self):
        return [p for p, _, v in self.intersections if v is not None and v.is_star]

    @property
    def star_count(self):
        return len(self.star_points)

    def to_dict(self):
        return {
            'line': str(self.line),
            'line_in_x': self.line_in_x,
            'intersections': [
                {
                    'point': str(p),
                    'multiplicity': m,
                    'verdict': v.to_dict() if v is not None else None,
                }
                for p, m, v in self.intersections
            ],
            'unresolved': list(self.unresolved),
            'star_count': self.star_count,
        }


@dataclass
class StarTriple:
    """A hyperplane, a vertex on it and a degree-d cone inside it"""
    plane: Hyperplane
    vertex: ProjPoint
    cone: object            # ambient form, independent of the plane's pivot variable
    chart_cone: object      # the same cone in the plane's chart, monic
    degree: int
    good_cone: GoodConeVerdict

    def to_dict(self):
        return {
            'plane': str(self.plane),
            'vertex': str(self.vertex),
            'cone': str(self.cone),
            'degree': self.degree,
            'good_cone': self.good_cone.value,
        }


@dataclass
class Configuration:
    """Ordered triples of one degree, with the incidence table P_i in Pi_j"""
    triples: Tuple
    degree: int
    incidence: Tuple
    ambient_dim: int
    field: object

    @property
    def size(self):
        return len(self.triples)

    @property
    def general_position(self):
        return not any(
            self.incidence[i][j]
            for i in range(self.size) for j in range(self.size) if i != j
        )

    def incident_pairs(self):
        """Unordered index pairs {i, j} with P_i in Pi_j or P_j in Pi_i"""
        pairs = []
        for i in range(self.size):
            for j in range(i + 1, self.size):
                if self.incidence[i][j] or self.incidence[j][i]:
                    pairs.append((i, j))
        return pairs

    def to_dict(self):
        return {
            'degree': self.degree,
            'triples': [t.to_dict() for t in self.triples],
            'incidence': [list(r) for r in self.incidence],
            'general_position': self.general_position,
        }


@dataclass
class LinearSystem:
    """V_d(L): a basis of the degree-d forms whose sections are the given cones"""
    degree: int
    ambient_dim: int
    monomials: Tuple
    basis: List
    vectors: List

    @property
    def vector_dim(self):
        return len(self.basis)

    @property
    def projective_dim(self):
        return len(self.basis) - 1


@dataclass
class SuitedReport:
    suited: bool
    witness: Optional[object]
    witness_coefficients: List
    seed: int
    probe_smooth: bool
    forced_singular: List[int]
    functionals_nonzero: List[bool]

    @property
    def membership(self):
        if not self.suited:
            return 'not suited'
        return 'suited + probe-smooth' if self.probe_smooth else 'suited'

    def to_dict(self):
        return {
            'suited': self.suited,
            'membership': self.membership,
            'witness': str(self.witness) if self.witness is not None else None,
            'witness_coefficients': [str(c) for c in self.witness_coefficients],
            'seed': self.seed,
            'probe_smooth': self.probe_smooth,
            'forced_singular': list(self.forced_singular),
            'functionals_nonzero': list(self.functionals_nonzero),
        }


@dataclass
class DimReport:
    projective_dim: int
    expected: int
    match: bool
    suited: bool

    def to_dict(self):
        return {
            'projective_dim': self.projective_dim,
            'expected': self.expected,
            'match': self.match,
            'suited': self.suited,
        }


@dataclass
class RestrictionReport:
    plane: Hyperplane
    dim: int
    expected: int
    contains_sublinear: bool

    @property
    def match(self):
        return self.dim == self.expected

    def to_dict(self):
        return {
            'plane': str(self.plane),
            'dim': self.dim,
            'expected': self.expected,
            'match': self.match,
            'contains_sublinear': self.contains_sublinear,
        }


@dataclass
class CandidateSpace:
    """Cones with a given vertex that extend a suited configuration"""
    plane: Hyperplane
    point: ProjPoint
    chart_basis: List
    ambient_basis: List
    verdicts: List[GoodConeVerdict]

    @property
    def dimension(self):
        return len(self.chart_basis)

    def to_dict(self):
        return {
            'plane': str(self.plane),
            'point': str(self.point),
            'dimension': self.dimension,
            'basis': [str(g) for g in self.ambient_basis],
            'good_cone': [v.value for v in self.verdicts],
        }


class ComponentKind(Enum):
    VT = 'Vt'
    V1 = 'V1'
    TWO_GENERAL = 'TwoGeneral'
    TWO_LINE_IN_X = 'TwoLineInX'
    INTERMEDIATE = 'Intermediate'
    EXTREMAL_INDEP = 'ExtremalIndep'
    EXTREMAL_DEP = 'ExtremalDep'
    PARTIAL_INCIDENCE = 'PartialIncidence'
    NOT_SUITED = 'NotSuited'


@dataclass
class ComponentLabel:
    """Classification verdict; dimensions come from closed formulas"""
    kind: ComponentKind
    dimension: Optional[int] = None
    expected_dimension: Optional[int] = None
    t: Optional[object] = None
    order: Optional[int] = None
    codim_bound_holds: Optional[bool] = None
    note: str = ''

    @property
    def is_expected(self):
        if self.dimension is None or self.expected_dimension is None:
            return False
        return self.dimension == self.expected_dimension

    def to_dict(self):
        return {
            'kind': self.kind.value,
            't': str(self.t) if self.t is not None else None,
            'order': self.order,
            'dimension': self.dimension,
            'expected_dimension': self.expected_dimension,
            'is_expected': self.is_expected,
            'codim_bound_holds': self.codim_bound_holds,
            'note': self.note,
        }

    def __repr__(self):
        t = f" t={self.t}" if self.t is not None else ''
        return f'<ComponentLabel {self.kind.value}{t} dim={self.dimension}>'


@dataclass
class NormalForm2:
    """Decomposition of a two-point witness in its normalized frame"""
    shape: str                 # 'General' or 'LineInX'
    parts: Dict[str, object]   # name -> (multiplier, part)
    frame: object              # ExactMatrix whose columns are the new basis
    transformed: object        # the witness in the new coordinates

    def reassemble(self):
        total = None
        for multiplier, part in self.parts.values():
            term = multiplier * part
            total = term if total is None else total + term
        return total

    def to_dict(self):
        return {
            'shape': self.shape,
            'parts': {name: str(part) for name, (_, part) in sorted(self.parts.items())},
            'transformed': str(self.transformed),
        }


@dataclass(frozen=True)
class SessionHeader:
    ambient_dim: int
    degree: int
    conductor: int

    def __post_init__(self):
        Config.validate_session(self.ambient_dim, self.degree, self.conductor)


@dataclass
class Report:
    """What a command prints: verdicts, witness polynomials and the seed used"""
    command: str
    seed: int
    verdicts: Dict = dc_field(default_factory=dict)
    witnesses: List[str] = dc_field(default_factory=list)
    timing: Optional[float] = None
    schema: int = Config.REPORT_SCHEMA

    def to_dict(self):
        return {
            'command': self.command,
            'seed': self.seed,
            'verdicts': self.verdicts,
            'witnesses': list(self.witnesses),
            'timing': self.timing,
            'schema': self.schema,
        }
