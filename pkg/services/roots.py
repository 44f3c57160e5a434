"""
Root finding over Q(zeta_n)
Finds monomial roots (root of unity times rational), solves leftover linear and
quadratic factors, and reports anything else as an unresolved factor
"""

import logging
from fractions import Fraction
from math import lcm

from sympy import divisors

from exceptions import NotApplicable, ZeroPolynomial
from services.univariate import UniPoly

logger = logging.getLogger(__name__)


def _root_key(value):
    return value.coeffs


def _unit_representatives(field):
    """One root of unity from each pair {w, -w}"""
    n = field.conductor
    count = n // 2 if n % 2 == 0 else n
    return [field.root_of_unity(k) for k in range(max(count, 1))]


def _rational_roots(poly):
    """Rational roots of a polynomial with Fraction coefficients and nonzero constant term"""
    if poly.degree < 1:
        return []
    denom = lcm(*(c.denominator for c in poly.coeffs))
    ints = [int(c * denom) for c in poly.coeffs]
    lead, const = abs(ints[-1]), abs(ints[0])
    found = []
    for b in divisors(lead):
        for a in divisors(const):
            for candidate in (Fraction(a, b), Fraction(-a, b)):
                if candidate not in found and poly(candidate) == 0:
                    found.append(candidate)
    return found


def monomial_roots(poly, field):
    """All roots w*r of poly with w a root of unity of the field and r rational

    Args:
        poly: UniPoly with coefficients in the field and nonzero constant term
        field: the CycloField

    Returns:
        List of distinct roots
    """
    coeffs = [field.coerce(c) for c in poly.coeffs]
    roots = []
    for omega in _unit_representatives(field):
        scaled = [c * omega ** k for k, c in enumerate(coeffs)]
        components = [
            UniPoly([s.coeffs[i] for s in scaled])
            for i in range(field.degree)
        ]
        common = UniPoly(())
        for comp in components:
            common = comp if common.is_zero() else common.gcd(comp)
        for r in _rational_roots(common):
            root = omega * r
            if root not in roots:
                roots.append(root)
    return roots


def field_sqrt(value, field):
    """A square root of value inside the field when one is monomial, else None"""
    value = field.coerce(value)
    if value.is_zero():
        return field.zero
    candidates = monomial_roots(UniPoly([-value, field.zero, field.one]), field)
    if not candidates:
        return None
    return sorted(candidates, key=_root_key)[0]


def root_multiplicity(poly, root):
    count = 0
    linear = UniPoly([-root, 1], poly.var)
    while not poly.is_zero() and poly(root) == 0:
        poly = poly / linear
        count += 1
    return count


def find_roots(poly, field):
    """Roots of a univariate polynomial over Q(zeta_n)

    Returns:
        (roots, unresolved): roots is a list of (root, multiplicity) in a fixed
        order, unresolved lists the monic factors with no root found in the field
    """
    poly = UniPoly([field.coerce(c) for c in poly.coeffs], poly.var)
    if poly.is_zero():
        raise ZeroPolynomial("cannot find the roots of the zero polynomial")
    if poly.degree == 0:
        return [], []

    rest = poly.squarefree_part()
    roots = []
    if rest[0] == 0:
        roots.append(field.zero)
        rest = rest / UniPoly([0, 1], poly.var)

    if rest.degree >= 1:
        for root in monomial_roots(rest, field):
            roots.append(root)
            rest = rest / UniPoly([-root, 1], poly.var)

    unresolved = []
    if rest.degree == 1:
        roots.append(-rest[0] / rest[1])
    elif rest.degree == 2:
        a, b, c = rest[2], rest[1], rest[0]
        s = field_sqrt(b * b - 4 * a * c, field)
        if s is None:
            unresolved.append(rest.monic())
        else:
            roots.append((-b + s) / (2 * a))
            roots.append((-b - s) / (2 * a))
    elif rest.degree > 2:
        unresolved.append(rest.monic())

    if unresolved:
        logger.warning(f"Unresolved factor(s) of degree {[u.degree for u in unresolved]} over Q(zeta_{field.conductor})")

    result = [(r, root_multiplicity(poly, r)) for r in sorted(roots, key=_root_key)]
    return result, unresolved


def binary_form_roots(form, known=()):
    """Roots (s:u) of a binary form, including the root at infinity (1:0)

    Args:
        form: BinaryForm
        known: (s, u) pairs already known to be roots; they are divided out first

    Returns:
        (roots, unresolved): roots is a list of ((s, u), multiplicity)
    """
    field = form.field
    if form.is_zero():
        raise ZeroPolynomial("the binary form vanishes identically")
    original = form.dehomogenized()
    poly = original
    finite = []
    for s, u in known:
        s, u = field.coerce(s), field.coerce(u)
        if u.is_zero():
            if form.infinity_multiplicity() == 0:
                raise NotApplicable("(1:0) is not a root of the binary form")
            continue
        r = s / u
        if poly(r) != 0:
            raise NotApplicable(f"{r} is not a root of the binary form")
        poly = poly / UniPoly([-r, 1], poly.var)
        if r not in finite:
            finite.append(r)

    unresolved = []
    if poly.degree >= 1:
        found, unresolved = find_roots(poly, field)
        for r, _ in found:
            if r not in finite:
                finite.append(r)

    roots = [((r, field.one), root_multiplicity(original, r)) for r in sorted(finite, key=_root_key)]
    at_infinity = form.infinity_multiplicity()
    if at_infinity:
        roots.append(((field.one, field.zero), at_infinity))
    return roots, unresolved
