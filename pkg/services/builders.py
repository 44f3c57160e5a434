"""
Family builders
Hypersurfaces with prescribed star points: Fermat, collinear, the three-point
normal forms and the fixtures used throughout the tests
"""

import logging
import random
from math import lcm

from config import Config
from exceptions import AmbientTooSmall, DegreeMismatch, NotApplicable, NotRootOfUnity
from models import Hyperplane, Hypersurface, ProjLine, ProjPoint
from services.configspace_service import config_space_service
from services.fields import CycloField
from services.geometry_service import geometry_service
from services.linalg import ExactMatrix
from services.polynomials import MultiPoly, monomials

logger = logging.getLogger(__name__)


def _var(field, nvars, i):
    return MultiPoly.variable(field, nvars, i)


def _unit(field, size, i):
    coords = [0] * size
    coords[i] = 1
    return ProjPoint.of(field, coords)


def random_form(field, nvars, degree, variables, rng, bound=Config.WITNESS_COEFF_RANGE):
    """Seeded random form of the given degree in a subset of the variables"""
    variables = list(variables)
    if degree < 0:
        return MultiPoly.zero(field, nvars)
    if not variables:
        return MultiPoly.constant(field, nvars, rng.randint(1, bound)) if degree == 0 else MultiPoly.zero(field, nvars)
    terms = {}
    for exp in monomials(len(variables), degree):
        full = [0] * nvars
        for v, k in zip(variables, exp):
            full[v] = k
        terms[tuple(full)] = rng.randint(-bound, bound)
    return MultiPoly(field, nvars, terms)


def _check_form(poly, degree, variables, name):
    if poly.is_zero():
        return
    if poly.homogeneous_degree() != degree:
        raise DegreeMismatch(f"{name} must be homogeneous of degree {degree}")
    for i in range(poly.nvars):
        if i not in variables and poly.depends_on(i):
            raise DegreeMismatch(f"{name} may not involve X{i}")


# Fermat

def build_fermat(d, N):
    """
    The Fermat hypersurface sum X_i^d and all of its star points

    Returns:
        (Hypersurface over Q(zeta_2d), list of ProjPoint)
    """
    if d < 3 or N < 2:
        raise ValueError(f"Fermat family needs d >= 3 and N >= 2, got d={d}, N={N}")
    field = CycloField(2 * d)
    nvars = N + 1
    f = MultiPoly.zero(field, nvars)
    for i in range(nvars):
        f = f + _var(field, nvars, i) ** d
    points = []
    for i in range(nvars):
        for j in range(i + 1, nvars):
            for k in range(d):
                xi = field.root_of_unity(2 * k + 1)
                coords = [field.zero] * nvars
                coords[i] = field.one
                coords[j] = xi
                points.append(ProjPoint.of(field, coords))
    logger.info(f"Fermat X_{d},{N}: {len(points)} star points")
    return Hypersurface(f), points


def enumerate_fermat_star_points(d, N):
    return build_fermat(d, N)[1]


def fermat_xi(d, k):
    """The k-th root of xi^d = -1, i.e. zeta_2d^(2k+1)"""
    return CycloField(2 * d).root_of_unity(2 * k + 1)


# Collinear star points

def collinear_fixture(d, N=3):
    """Rational data for d collinear star points on the line X2 = ... = XN = 0"""
    field = CycloField(1)
    size = N + 1
    line = ProjLine(_unit(field, size, 0), _unit(field, size, 1))
    points, planes = [], []
    for i in range(1, d + 1):
        coords = [0] * size
        coords[0], coords[1] = 1, i
        points.append(ProjPoint.of(field, coords))
        coeffs = [0] * size
        coeffs[0], coeffs[1], coeffs[2] = i, -1, 1
        if size > 3:
            coeffs[3] = i
        planes.append(Hyperplane.of(field, coeffs))
    base = MultiPoly.zero(field, N - 1)
    for k in range(N - 1):
        base = base + _var(field, N - 1, k) ** d
    cone = geometry_service.cone_through(planes[0], points[0], base)
    return line, points, planes, cone


def collinear_vertex(line, points):
    """First (1:k) on the line, k = 0, 1, ..., distinct from every input point"""
    field = line.field
    k = 0
    while True:
        candidate = line.point(field.one, field.coerce(k))
        if candidate not in points:
            return candidate
        k += 1


def collinear_configuration(d, line, points, planes, cone):
    """Project the first cone from a vertex on the line into every plane"""
    if len(points) != d or len(planes) != d:
        raise ValueError(f"need {d} points and {d} planes")
    if len(set(points)) != d:
        raise NotApplicable("collinear points must be distinct")
    for point, plane in zip(points, planes):
        if not line.contains(point):
            raise NotApplicable(f"{point} is not on {line}")
        if not plane.contains(point):
            raise NotApplicable(f"{point} is not on {plane}")
        if plane.contains(line.a) and plane.contains(line.b):
            raise NotApplicable(f"{plane} contains the line")
    field = line.field
    nvars = len(points[0].coords)
    first = planes[0]
    vertex = collinear_vertex(line, points)
    scale = first.value(vertex)
    linear = first.linear_form
    images = [
        _var(field, nvars, k) * scale - linear * vertex.coords[k]
        for k in range(nvars)
    ]
    projected = cone.compose(images)
    triples = []
    for point, plane in zip(points, planes):
        section, _ = geometry_service.restrict_to_hyperplane(projected, plane)
        triples.append(config_space_service.validate_triple(plane, point, section, d))
    return config_space_service.make_configuration(triples)


def build_collinear(d, N, line, points, planes, cone, seed=None):
    """
    Hypersurface with star points at d given collinear points

    Args:
        cone: ambient form whose restriction to planes[0] is a good cone with vertex points[0]

    Returns:
        Hypersurface
    """
    config = collinear_configuration(d, line, points, planes, cone)
    report = config_space_service.is_suited(config, seed=seed)
    if not report.suited:
        raise NotApplicable("collinear configuration is not suited")
    logger.info(f"collinear witness with {d} star points, probe-smooth={report.probe_smooth}")
    return Hypersurface(report.witness)


# Three star points in general position, Case I

def case1_points(field, N, t):
    size = N + 1
    third = [field.zero] * size
    third[0], third[1], third[2] = -field.one, t, t - 1
    return [_unit(field, size, 0), _unit(field, size, 1), ProjPoint.of(field, third)]


def case1_planes(field, N):
    size = N + 1
    x1 = [0] * size
    x1[1] = 1
    x0 = [0] * size
    x0[0] = 1
    third = [0] * size
    third[0], third[1], third[2] = 1, 1, -1
    return [Hyperplane.of(field, x1), Hyperplane.of(field, x0), Hyperplane.of(field, third)]


def qualifying_exponents(t, d):
    """Exponents 0 <= j <= d with t^j = 1"""
    return [j for j in range(d + 1) if t ** j == 1]


def build_case1(d, N, t, A=None, g012=None, degenerate=False, seed=None):
    """
    Hypersurface with star points e0, e1 and (-1:t:t-1:0...) in general position

    Args:
        t: CycloNum, t != 0, 1; a root of unity with t^d = 1 or t^(d-1) = 1 unless degenerate
        A: dict j -> form of degree d-j in X3..XN (scalars mean A_j * X3^(d-j))
        g012: form of degree d-3
        degenerate: keep only the A_0 term, for any t

    Returns:
        Hypersurface
    """
    field = t.field
    nvars = N + 1
    if N < 3:
        raise AmbientTooSmall("Case I needs N >= 3")
    if t == 1 or t == 0:
        raise NotRootOfUnity("t must differ from 0 and 1")
    if not degenerate and t ** d != 1 and t ** (d - 1) != 1:
        raise NotRootOfUnity(f"{t} satisfies neither t^{d} = 1 nor t^{d - 1} = 1")

    rng = random.Random(Config.DEFAULT_SEED if seed is None else seed)
    tail = list(range(3, nvars))
    exponents = [0] if degenerate else qualifying_exponents(t, d)
    forms = {}
    for j in exponents:
        given = (A or {}).get(j)
        if given is None:
            given = random_form(field, nvars, d - j, tail, rng)
            if given.is_zero():
                given = _var(field, nvars, 3) ** (d - j)
        elif not isinstance(given, MultiPoly):
            given = _var(field, nvars, 3) ** (d - j) * given
        _check_form(given, d - j, tail, f"A_{j}")
        forms[j] = given
    if g012 is None:
        g012 = random_form(field, nvars, d - 3, range(nvars), rng)
        g012 = g012 + (_var(field, nvars, 0) ** (d - 3) + _var(field, nvars, 1) ** (d - 3)) * 5
    _check_form(g012, d - 3, range(nvars), "g012")

    X0, X1, X2 = (_var(field, nvars, i) for i in range(3))
    Y = X0 * t + X1
    denominator = (Y - X2) * (Y - X2 * t)
    f = X0 * X1 * (X0 + X1 - X2) * g012
    for j, form in forms.items():
        if j > 0:
            f = f + X0 * X1 * form * (Y ** j - X2 ** j).exact_div(denominator)
        f = f - form * X2 ** j * ((t - 1) ** 2).inverse()
    logger.info(f"Case I form for t={t}, exponents {sorted(forms)}")
    return Hypersurface(f)


def degenerate_certificate(surface):
    """Multiplicity at (0:0:1:0...); at least 2 means the point is singular"""
    field = surface.field
    return geometry_service.multiplicity_at(surface.equation, _unit(field, surface.ambient_dim + 1, 2))


# Intermediate case

def intermediate_points(field, N):
    size = N + 1
    third = [0] * size
    third[1], third[2] = 1, 1
    return [_unit(field, size, 0), _unit(field, size, 1), ProjPoint.of(field, third)]


def intermediate_planes(field, N):
    size = N + 1
    x1 = [0] * size
    x1[1] = 1
    x0 = [0] * size
    x0[0] = 1
    third = [0] * size
    third[0], third[3] = 1, -1
    return [Hyperplane.of(field, x1), Hyperplane.of(field, x0), Hyperplane.of(field, third)]


def build_intermediate(d, N, B=None, g013=None, field=None, seed=None):
    """
    Hypersurface whose star points e0, e1, (0:1:1:0...) have P2, P3 in Pi2 and Pi3

    Args:
        B: dict k -> form in X3..XN, degree d-k-1 for 1 <= k <= d-1 and degree d for k = 0
        g013: form of degree d-3
    """
    if N < 3:
        raise AmbientTooSmall("the intermediate family needs N >= 3")
    field = field or CycloField(1)
    nvars = N + 1
    rng = random.Random(Config.DEFAULT_SEED if seed is None else seed)
    tail = list(range(3, nvars))
    B = dict(B or {})
    for k in range(d):
        degree = d if k == 0 else d - k - 1
        if B.get(k) is None:
            B[k] = random_form(field, nvars, degree, tail, rng)
        elif not isinstance(B[k], MultiPoly):
            B[k] = _var(field, nvars, 3) ** degree * B[k]
        _check_form(B[k], degree, tail, f"B_{k}")
    if B[d - 1].is_zero():
        B[d - 1] = MultiPoly.constant(field, nvars, 1)
    if g013 is None:
        g013 = random_form(field, nvars, d - 3, range(nvars), rng)
        g013 = g013 + (_var(field, nvars, 0) ** (d - 3) + _var(field, nvars, 1) ** (d - 3)) * 5
    _check_form(g013, d - 3, range(nvars), "g013")

    X0, X1, X2, X3 = (_var(field, nvars, i) for i in range(4))
    f = X0 * X1 * (X3 - X0) * g013 + B[0]
    for k in range(1, d):
        f = f - X0 * B[k] * (X2 ** k - (X2 - X1) ** k)
        f = f + X3 * B[k] * X2 ** k
    logger.info(f"intermediate form of degree {d} in P^{N}")
    return Hypersurface(f)


# Extremal cases

def extremal_points(field, N):
    return [_unit(field, N + 1, i) for i in range(3)]


def extremal_planes(field, N, case):
    size = N + 1

    def plane(*pairs):
        coeffs = [0] * size
        for index, value in pairs:
            coeffs[index] = value
        return Hyperplane.of(field, coeffs)

    if case == 'indep':
        return [plane((3, 1)), plane((4, 1)), plane((5, 1))]
    return [plane((3, 1)), plane((4, 1)), plane((3, -1), (4, 1))]


def build_extremal(d, N, case='indep', field=None, seed=None):
    """
    Hypersurface with three mutually incident star points e0, e1, e2

    Args:
        case: 'indep' (planes X3, X4, X5) or 'dep' (planes X3, X4, X4 - X3)
    """
    if N < 5:
        raise AmbientTooSmall(f"mutually incident star points need N >= 5, got {N}")
    if case not in ('indep', 'dep'):
        raise ValueError(f"unknown extremal case {case!r}")
    field = field or CycloField(1)
    nvars = N + 1
    rng = random.Random(Config.DEFAULT_SEED if seed is None else seed)
    X = [_var(field, nvars, i) for i in range(nvars)]
    rest = list(range(6 if case == 'indep' else 5, nvars))

    def form(degree, variables):
        return random_form(field, nvars, degree, list(variables) + rest, rng)

    if case == 'indep':
        g3 = form(d - 1, [0, 3]) + X[0] ** (d - 1) * 5
        g4 = form(d - 1, [1, 4]) + X[1] ** (d - 1) * 5
        g5 = form(d - 1, [2, 5]) + X[2] ** (d - 1) * 5
        f = (
            X[3] * X[4] * X[5] * form(d - 3, range(nvars))
            + X[3] * X[4] * form(d - 2, [0, 1, 3, 4])
            + X[3] * X[5] * form(d - 2, [0, 2, 3, 5])
            + X[4] * X[5] * form(d - 2, [1, 2, 4, 5])
            + X[3] * g3 + X[4] * g4 + X[5] * g5
            + form(d, [])
        )
    else:
        # s(X2, Y, X5..) evaluated at Y = X3 and at Y = X4
        s_terms = form(d - 2, [2, 3]) + X[2] ** (d - 2) * 5
        swap = list(X)
        swap[3] = X[4]
        s_at_4 = s_terms.compose(swap)
        beta = form(d - 1, [0, 3]) + X[0] ** (d - 1) * 5
        gamma = form(d - 1, [1, 4]) + X[1] ** (d - 1) * 5
        f = (
            X[3] * X[4] * form(d - 2, [0, 1, 3, 4])
            + X[3] * (beta + X[2] * s_terms)
            + X[4] * (gamma - X[2] * s_at_4)
            + form(d, [])
        )
    logger.info(f"extremal {case} form of degree {d} in P^{N}")
    return Hypersurface(f)


# Fixtures

def quartic_fixture():
    """
    The quartic with a line through exactly two star points

    Returns:
        (Hypersurface, line X2 = X3 = 0, [(1:0:0:0), (1:1:0:0)])
    """
    field = CycloField(1)
    X0, X1, X2, X3 = (_var(field, 4, i) for i in range(4))
    f = X2 * X1 * (X2 - X1) * (X2 + X1) + X3 * (X1 - X0) * (X3 + X1 - X0) * (X3 - X1 + X0)
    line = ProjLine(_unit(field, 4, 0), _unit(field, 4, 1))
    points = [_unit(field, 4, 0), ProjPoint.of(field, [1, 1, 0, 0])]
    return Hypersurface(f), line, points


def case3_fixture(d=3):
    """Three general-position triples with collinear-free vertices and dependent planes"""
    field = CycloField(1)
    X0, X1, X2, X3 = (_var(field, 4, i) for i in range(4))
    planes = [
        Hyperplane.of(field, [0, 1, 0, 0]),
        Hyperplane.of(field, [1, 0, 0, 0]),
        Hyperplane.of(field, [1, -1, 0, 0]),
    ]
    points = [_unit(field, 4, 0), _unit(field, 4, 1), ProjPoint.of(field, [1, 1, 1, 0])]
    cones = [X2 ** d + X3 ** d, X2 ** d + X3 ** d, (X1 - X2) ** d + X3 ** d]
    triples = [
        config_space_service.validate_triple(plane, point, cone, d)
        for plane, point, cone in zip(planes, points, cones)
    ]
    return config_space_service.make_configuration(triples)


def component_field(d):
    """The field holding every root t of (t^d - 1)(t^(d-1) - 1)/(t - 1)"""
    return CycloField(lcm(d, d - 1))


def fermat_point(d, N, i, j, k):
    """E_ij(xi_k): X_i = 1, X_j = zeta_2d^(2k+1), every other coordinate 0"""
    field = CycloField(2 * d)
    coords = [field.zero] * (N + 1)
    coords[i] = field.one
    coords[j] = fermat_xi(d, k)
    return ProjPoint.of(field, coords)


# Quadric and seeded random samples

def build_quadric():
    """The smooth quadric surface Z(X0*X3 - X1*X2)"""
    field = CycloField(1)
    X0, X1, X2, X3 = (_var(field, 4, i) for i in range(4))
    return Hypersurface(X0 * X3 - X1 * X2)


def quadric_points(count, rng, bound=5):
    """Seeded points (1 : a : b : ab) of the quadric with a, b nonzero"""
    field = CycloField(1)
    values = [k for k in range(-bound, bound + 1) if k]
    points = []
    for _ in range(count):
        a, b = rng.choice(values), rng.choice(values)
        points.append(ProjPoint.of(field, [1, a, b, a * b]))
    return points


def random_invertible(field, size, rng, fixed_column=None, bound=2):
    """Seeded invertible integer matrix, optionally with a prescribed first column"""
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        if fixed_column is not None:
            for i in range(size):
                rows[i][0] = fixed_column[i]
        matrix = ExactMatrix(rows, size, field)
        if matrix.rank() == size:
            return matrix


def random_star_sample(d, rng, star=True):
    """
    Seeded surface X3*q + b(X1, X2) in P^3, moved by a random linear change

    The point e0 is smooth with tangent X3 = 0 and is a star point; with
    star=False a term c*X0*X1^(d-1) drops the multiplicity of the tangent
    section to d-1.

    Returns:
        (Hypersurface, ProjPoint) with the point moved along with the surface
    """
    if d < 3:
        raise ValueError(f"random samples need d >= 3, got {d}")
    field = CycloField(1)
    X0, X1, X2, X3 = (_var(field, 4, i) for i in range(4))
    q = random_form(field, 4, d - 1, range(4), rng) + X0 ** (d - 1) * 5
    base = random_form(field, 4, d, [1, 2], rng) + X1 ** d * 5
    f = X3 * q + base
    if not star:
        f = f + X0 * X1 ** (d - 1) * rng.choice([-2, -1, 1, 2])
    matrix = random_invertible(field, 4, rng)
    point = ProjPoint.of(field, matrix.inverse().column(0))
    return Hypersurface(f.substitute_linear(matrix)), point


def fermat_cubic_lines():
    """The 27 lines X_a = xi X_b, X_c = eta X_d of the Fermat cubic surface"""
    field = CycloField(6)
    lines = []
    for (a, b), (c, d) in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        for j in range(3):
            for k in range(3):
                first = [field.zero] * 4
                first[a], first[b] = fermat_xi(3, j), field.one
                second = [field.zero] * 4
                second[c], second[d] = fermat_xi(3, k), field.one
                lines.append(ProjLine(ProjPoint.of(field, first), ProjPoint.of(field, second)))
    return lines
