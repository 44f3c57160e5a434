"""
Classify Service
Components of the configuration spaces of two and three star points, the
tridiagonal system behind Case I, and normal forms of two-point witnesses
"""

import logging
from math import gcd

from exceptions import DegenerateTriple, EmptySystem, NotSuited, ShapeViolation
from models import ComponentKind, ComponentLabel, GoodConeVerdict, NormalForm2
from services import dimensions
from services.builders import component_field
from services.configspace_service import config_space_service
from services.linalg import ExactMatrix, rank_of_vectors
from services.polynomials import MultiPoly

logger = logging.getLogger(__name__)


# Tridiagonal system of Case I

def tridiagonal_matrix(j, t):
    """
    M_j: (j-1)x(j-1), diagonal t+1, superdiagonal -1, subdiagonal -t

    t may be a CycloNum or a UniPoly (symbolic determinant over Q[t]).
    """
    if j < 2:
        raise ValueError(f"M_j needs j >= 2, got {j}")
    n = j - 1
    zero = t * 0
    rows = []
    for r in range(n):
        row = [zero] * n
        row[r] = t + 1
        if r + 1 < n:
            row[r + 1] = zero - 1
        if r > 0:
            row[r - 1] = -t
        rows.append(row)
    field = getattr(t, 'field', None)
    return ExactMatrix(rows, n, field)


def tridiag_solve(j, t):
    """
    Determinant 1 + t + ... + t^(j-1) of M_j and, when it vanishes, the
    solution (1, 1+t, ..., 1+...+t^(j-2))

    Returns:
        dict with 'det' and 'solution' (None when M_j is invertible)
    """
    matrix = tridiagonal_matrix(j, t)
    det = matrix.determinant()
    assert det == sum((t ** k for k in range(1, j)), t ** 0), f"det M_{j} = {det}"
    if det != 0:
        return {'det': det, 'solution': None}
    solution = []
    partial = t * 0
    for k in range(j - 1):
        partial = partial + t ** k
        solution.append(partial)
    kernel = matrix.nullspace()
    assert len(kernel) == 1 and kernel[0] == solution, f"M_{j} kernel {kernel} != {solution}"
    return {'det': det, 'solution': solution}


# Incidence geometry

def _dot(coeffs, vector):
    return sum((a * b for a, b in zip(coeffs, vector)), coeffs[0] * 0)


def _vertex_rank(config):
    return rank_of_vectors([t.vertex.coords for t in config.triples], config.ambient_dim + 1, config.field)


def _plane_rank(config):
    return rank_of_vectors([t.plane.coeffs for t in config.triples], config.ambient_dim + 1, config.field)


def _check_distinct(config):
    triples = config.triples
    for i in range(len(triples)):
        for j in range(i + 1, len(triples)):
            if triples[i].vertex == triples[j].vertex:
                raise DegenerateTriple(f"triples {i} and {j} share the vertex {triples[i].vertex}")
            if triples[i].plane == triples[j].plane:
                raise DegenerateTriple(f"triples {i} and {j} share the plane {triples[i].plane}")


def _asymmetric(config):
    n = config.size
    return any(config.incidence[i][j] != config.incidence[j][i] for i in range(n) for j in range(n) if i != j)


def t_invariant(config):
    """-pi1(p3) pi3(p2) pi2(p1) / (pi1(p2) pi2(p3) pi3(p1)) for three triples in general position"""
    (pl1, p1), (pl2, p2), (pl3, p3) = [(t.plane, t.vertex) for t in config.triples]
    numerator = pl1.value(p3) * pl3.value(p2) * pl2.value(p1)
    denominator = pl1.value(p2) * pl2.value(p3) * pl3.value(p1)
    return -numerator / denominator


def case1_frame(config):
    """
    Linear forms Y_0..Y_N sending P1 -> e0, P2 -> e1, Pi1 -> {Y1 = 0},
    Pi2 -> {Y0 = 0}, Pi3 -> {Y2 = Y0 + Y1}

    Returns:
        (ExactMatrix of the forms as rows, t read off from P3)
    """
    field = config.field
    size = config.ambient_dim + 1
    (pl1, p1), (pl2, p2), (pl3, p3) = [(t.plane, t.vertex) for t in config.triples]
    a = pl3.value(p1) / pl2.value(p1)
    b = pl3.value(p2) / pl1.value(p2)
    y0 = [a * c for c in pl2.coeffs]
    y1 = [b * c for c in pl1.coeffs]
    y2 = [u + v - w for u, v, w in zip(y0, y1, pl3.coeffs)]
    # Remaining forms vanish on P1, P2, P3
    rest = ExactMatrix([p1.coords, p2.coords, p3.coords], size, field).nullspace()
    frame = ExactMatrix([y0, y1, y2] + rest, size, field)
    image = frame.apply(p3.coords)
    t = -image[1] / image[0]
    if image[2] != image[0] + image[1] or any(x != 0 for x in image[3:]):
        raise ShapeViolation(f"P3 maps to {image}, not to (-1 : t : t-1 : 0 ...)")
    return frame, t


# Classification

class ClassifyService:
    """Component labels for configurations of two and three triples"""

    def __init__(self, configspace=None):
        self.configspace = configspace or config_space_service

    def _suited(self, config):
        try:
            return self.configspace.is_suited(config)
        except EmptySystem:
            return None

    def _label(self, config, kind, dimension, note='', t=None, order=None):
        N, d, e = config.ambient_dim, config.degree, config.size
        expected = dimensions.expected_dimension(N, d, e)
        holds = None if dimension is None else dimensions.codim_bound_holds(N, d, e, dimension)
        return ComponentLabel(
            kind=kind, dimension=dimension, expected_dimension=expected,
            t=t, order=order, codim_bound_holds=holds, note=note,
        )

    def _not_suited(self, config, note):
        logger.info(f"not suited: {note}")
        return self._label(config, ComponentKind.NOT_SUITED, None, note)

    def classify_three(self, config):
        """
        Component of V_{d,3} containing a configuration of three triples

        Args:
            config: Configuration with three triples

        Returns:
            ComponentLabel

        Raises:
            DegenerateTriple: coincident vertices or planes
        """
        if config.size != 3:
            raise ValueError(f"classify_three needs 3 triples, got {config.size}")
        _check_distinct(config)
        N, d = config.ambient_dim, config.degree
        if _asymmetric(config):
            return self._not_suited(config, "asymmetric incidence")

        pairs = config.incident_pairs()
        if not pairs:
            collinear = _vertex_rank(config) == 2
            dependent = _plane_rank(config) == 2
            logger.debug(f"general position: collinear={collinear}, dependent planes={dependent}")
            if not collinear and dependent:
                return self._not_suited(config, "Case III: a vertex is forced singular")
            if not collinear:
                frame, t = case1_frame(config)
                assert t == t_invariant(config), "frame and cross-ratio disagree on t"
                if t ** d != 1 and t ** (d - 1) != 1:
                    return self._not_suited(config, f"t = {t} is not a root of (t^d - 1)(t^(d-1) - 1)")
                report = self._suited(config)
                if report is None or not report.suited:
                    return self._not_suited(config, f"Case I, t = {t}: V_d(L) has no section of every cone")
                order = t.order()
                return self._label(
                    config, ComponentKind.VT, dimensions.vt_dimension(N, d, order),
                    "Case I", t=t, order=order,
                )
            report = self._suited(config)
            case = "Case IV" if dependent else "Case II"
            if report is None or not report.suited:
                return self._not_suited(config, f"{case}: configuration is not suited")
            return self._label(config, ComponentKind.V1, dimensions.v1_dimension(N, d), case)

        if len(pairs) == 2:
            return self._label(config, ComponentKind.PARTIAL_INCIDENCE, None, f"incident pairs {pairs}")

        report = self._suited(config)
        if report is None or not report.suited:
            return self._not_suited(config, f"incident pairs {pairs}: configuration is not suited")
        if len(pairs) == 1:
            return self._label(
                config, ComponentKind.INTERMEDIATE, dimensions.intermediate_dimension(N, d),
                f"incident pair {pairs[0]}",
            )
        values = dimensions.extremal_dimensions(N, d)
        note = "conjectural for d <= 5" if values['conjectural'] else ''
        if _plane_rank(config) == 3:
            return self._label(config, ComponentKind.EXTREMAL_INDEP, values['config_indep'], note)
        return self._label(config, ComponentKind.EXTREMAL_DEP, values['config_dep'], note)

    def classify_two(self, config):
        """Component of V_{d,2}: general position or a line through both points inside X"""
        if config.size != 2:
            raise ValueError(f"classify_two needs 2 triples, got {config.size}")
        _check_distinct(config)
        N, d = config.ambient_dim, config.degree
        if _asymmetric(config):
            return self._not_suited(config, "P1 in Pi2 forces P2 in Pi1")
        report = self._suited(config)
        if report is None or not report.suited:
            return self._not_suited(config, "configuration is not suited")
        if config.general_position:
            return self._label(config, ComponentKind.TWO_GENERAL, dimensions.two_general_dimension(N, d))
        return self._label(config, ComponentKind.TWO_LINE_IN_X, dimensions.two_line_in_x_dimension(N, d))

    # Normal forms

    def _frame_two(self, config):
        field = config.field
        size = config.ambient_dim + 1
        (pl1, p1), (pl2, p2) = [(t.plane, t.vertex) for t in config.triples]
        common = ExactMatrix([pl1.coeffs, pl2.coeffs], size, field).nullspace()
        if config.general_position:
            return 'General', [p1.coords, p2.coords] + common
        in_two = ExactMatrix([pl2.coeffs], size, field).nullspace()
        in_one = ExactMatrix([pl1.coeffs], size, field).nullspace()
        col2 = next(v for v in in_two if _dot(pl1.coeffs, v) != 0)
        col3 = next(v for v in in_one if _dot(pl2.coeffs, v) != 0)
        inner = [p1.coords, p2.coords]
        for v in common:
            if len(inner) == size - 2:
                break
            if rank_of_vectors(inner + [v], size, field) > len(inner):
                inner.append(v)
        return 'LineInX', inner[:2] + [col2, col3] + inner[2:]

    def _decompose(self, shape, poly):
        n = poly.nvars
        field = poly.field
        buckets = {}

        def put(name, exp, coeff, forbidden, divide):
            if any(exp[i] for i in forbidden):
                raise ShapeViolation(f"monomial {exp} in the {name} part of {shape}")
            reduced = list(exp)
            for i in divide:
                reduced[i] -= 1
            buckets.setdefault(name, {})[tuple(reduced)] = coeff

        for exp, coeff in poly.terms.items():
            if shape == 'General':
                if exp[0] and exp[1]:
                    put('g01', exp, coeff, (), (0, 1))
                else:
                    put('g', exp, coeff, (0, 1), ())
            else:
                if exp[2] and exp[3]:
                    put('g23', exp, coeff, (), (2, 3))
                elif exp[2]:
                    put('g2', exp, coeff, (1, 3), (2,))
                elif exp[3]:
                    put('g3', exp, coeff, (0, 2), (3,))
                else:
                    put('g', exp, coeff, (0, 1, 2, 3), ())

        def var(i):
            return MultiPoly.variable(field, n, i)

        one = MultiPoly.constant(field, n, 1)
        multipliers = (
            {'g01': var(0) * var(1), 'g': one} if shape == 'General'
            else {'g23': var(2) * var(3), 'g2': var(2), 'g3': var(3), 'g': one}
        )
        return {
            name: (multipliers[name], MultiPoly(field, n, buckets.get(name, {})))
            for name in multipliers
        }

    def normal_form_two(self, config):
        """
        Decompose the canonical witness of a suited 2-configuration in its normalized frame

        Every basis element of V_d(L) is checked against the shape first.

        Returns:
            NormalForm2

        Raises:
            NotSuited, ShapeViolation
        """
        if config.size != 2:
            raise ValueError(f"normal_form_two needs 2 triples, got {config.size}")
        _check_distinct(config)
        if _asymmetric(config):
            raise NotSuited("asymmetric incidence")
        system = self.configspace.vd_basis(config)
        if not system.basis:
            raise NotSuited("V_d(L) is zero")
        report = self.configspace.is_suited(config, system)
        if not report.suited:
            raise NotSuited("no member of V_d(L) restricts to every cone")

        shape, columns = self._frame_two(config)
        frame = ExactMatrix.from_columns(columns, config.field)
        for element in system.basis:
            self._decompose(shape, element.substitute_linear(frame))
        transformed = report.witness.substitute_linear(frame)
        parts = self._decompose(shape, transformed)
        result = NormalForm2(shape=shape, parts=parts, frame=frame, transformed=transformed)
        if result.reassemble() != transformed:
            raise ShapeViolation("parts do not reassemble the witness")
        logger.info(f"normal form {shape} with {len(system.basis)} basis elements checked")
        return result

    # Case III and the component table

    def case3_check(self, config):
        """
        The obstruction for non-collinear vertices with Pi1 cut Pi2 inside Pi3

        Returns:
            dict: suited, forced_singular, bad_cones and contradiction
        """
        if config.size != 3:
            raise ValueError(f"case3_check needs 3 triples, got {config.size}")
        bad = [
            i for i, t in enumerate(config.triples)
            if t.good_cone is GoodConeVerdict.SINGULAR_OUTSIDE_VERTEX
        ]
        report = self._suited(config)
        suited = report is not None and report.suited
        forced = list(report.forced_singular) if report is not None else []
        result = {
            'suited': suited,
            'forced_singular': forced,
            'bad_cones': bad,
            'contradiction': not suited or bool(forced) or bool(bad),
        }
        logger.info(f"Case III check: {result}")
        return result

    def component_table(self, d, N):
        """
        All components of V_{d,3}: V_t for every root t != 1 of (t^d - 1)(t^(d-1) - 1), and V1

        Returns:
            list of ComponentLabel, 2d - 2 entries
        """
        if d < 3 or N < 3:
            raise ValueError(f"component table needs d >= 3 and N >= 3, got d={d}, N={N}")
        field = component_field(d)
        m = field.conductor
        expected = dimensions.expected_dimension(N, d, 3)
        rows = []
        for k in range(1, m):
            order = m // gcd(k, m)
            if d % order and (d - 1) % order:
                continue
            dimension = dimensions.vt_dimension(N, d, order)
            rows.append(ComponentLabel(
                kind=ComponentKind.VT, dimension=dimension, expected_dimension=expected,
                t=field.root_of_unity(k), order=order,
                codim_bound_holds=dimensions.codim_bound_holds(N, d, 3, dimension),
                note="dimension per formula",
            ))
        dimension = dimensions.v1_dimension(N, d)
        rows.append(ComponentLabel(
            kind=ComponentKind.V1, dimension=dimension, expected_dimension=expected,
            codim_bound_holds=dimensions.codim_bound_holds(N, d, 3, dimension),
            note="dimension per formula",
        ))
        assert len(rows) == dimensions.component_count(d), f"{len(rows)} components for d={d}"
        logger.info(f"component table d={d}, N={N}: {len(rows)} components")
        return rows


# Singleton instance
classify_service = ClassifyService()


def classify_three(config):
    return classify_service.classify_three(config)


def classify_two(config):
    return classify_service.classify_two(config)


def normal_form_two(config):
    return classify_service.normal_form_two(config)


def case3_check(config):
    return classify_service.case3_check(config)


def component_table(d, N):
    return classify_service.component_table(d, N)
