"""
Exact coefficient fields
Rationals and cyclotomic extensions Q(zeta_n) in the power basis modulo Phi_n
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache

from exceptions import DivisionByZero, FieldMismatch
from services.univariate import UniPoly

logger = logging.getLogger(__name__)

Rational = Fraction


def euler_phi(n):
    """Euler totient by trial factorization"""
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def proper_divisors(n):
    return [m for m in range(1, n) if n % m == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """The n-th cyclotomic polynomial Phi_n over Q

    x^n - 1 divided by Phi_m for every proper divisor m of n.
    """
    if n < 1:
        raise ValueError(f"cyclotomic_poly needs n >= 1, got {n}")
    poly = UniPoly([Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)])
    for m in proper_divisors(n):
        poly = poly / cyclotomic_poly(m)
    return poly


class CycloField:
    """The cyclotomic field Q(zeta_n); one shared instance per conductor"""

    _instances = {}

    def __new__(cls, conductor):
        conductor = int(conductor)
        if conductor < 1:
            raise ValueError(f"conductor must be >= 1, got {conductor}")
        field = cls._instances.get(conductor)
        if field is not None:
            return field

        field = super().__new__(cls)
        field.conductor = conductor
        field.modulus = cyclotomic_poly(conductor)
        field.degree = field.modulus.degree
        field._reduction = field._build_reduction_table()
        field._powers = {}
        cls._instances[conductor] = field
        logger.debug(f"Created Q(zeta_{conductor}) of degree {field.degree}")
        return field

    def __reduce__(self):
        return (CycloField, (self.conductor,))

    def _build_reduction_table(self):
        """Coefficient vectors of x^k mod Phi_n for k < 2*degree - 1"""
        deg = self.degree
        tail = [-self.modulus[i] for i in range(deg)]  # x^deg == sum tail[i] x^i
        table = []
        for k in range(max(2 * deg - 1, 1)):
            if k < deg:
                row = [Fraction(0)] * deg
                row[k] = Fraction(1)
            else:
                prev = table[-1]
                top = prev[-1]
                row = [Fraction(0)] + prev[:-1]
                if top:
                    row = [row[i] + top * tail[i] for i in range(deg)]
            table.append(row)
        return table

    # Elements

    def element(self, coeffs):
        return CycloNum(self, coeffs)

    def from_rational(self, value):
        return CycloNum(self, [Fraction(value)])

    @property
    def zero(self):
        return CycloNum(self, ())

    @property
    def one(self):
        return CycloNum(self, [Fraction(1)])

    @property
    def gen(self):
        if self.degree == 1:
            # Q(zeta_1) = Q(zeta_2) = Q; zeta is the root of Phi_n
            return self.from_rational(-self.modulus[0])
        return CycloNum(self, [Fraction(0), Fraction(1)])

    def root_of_unity(self, k):
        """zeta_n ** k"""
        k %= self.conductor
        if k not in self._powers:
            self._powers[k] = self.gen ** k
        return self._powers[k]

    def zeta(self, m, k=1):
        """zeta_m ** k, for m dividing the conductor"""
        if self.conductor % m != 0:
            raise FieldMismatch(f"zeta_{m} is not available in Q(zeta_{self.conductor})")
        return self.root_of_unity((self.conductor // m) * k)

    @property
    def unit_order(self):
        return math.lcm(2, self.conductor)

    def unit_group(self):
        """All roots of unity lying in the field"""
        powers = [self.root_of_unity(k) for k in range(self.conductor)]
        if self.conductor % 2 == 0:
            return powers
        return powers + [-p for p in powers]

    def coerce(self, value):
        if isinstance(value, CycloNum):
            if value.field is self:
                return value
            if value.field.degree == 1 and value.field.conductor <= 2:
                return self.from_rational(value.coeffs[0])
            raise FieldMismatch(
                f"cannot mix Q(zeta_{value.field.conductor}) with Q(zeta_{self.conductor})"
            )
        if isinstance(value, (int, Fraction)):
            return self.from_rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into Q(zeta_{self.conductor})")

    def __repr__(self):
        return f"CycloField({self.conductor})"


def _convolve(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


class CycloNum:
    """An element of Q(zeta_n), immutable"""

    __slots__ = ('field', 'coeffs')

    def __init__(self, field, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        deg = field.degree
        if len(coeffs) > deg:
            raise ValueError(f"{len(coeffs)} coefficients for a field of degree {deg}")
        coeffs += [Fraction(0)] * (deg - len(coeffs))
        self.field = field
        self.coeffs = tuple(coeffs)

    # Coercion

    def _pair(self, other):
        """Bring other into a common field; returns (a, b) or None"""
        if isinstance(other, CycloNum):
            if other.field is self.field:
                return self, other
            if self.field.degree == 1 and self.field.conductor <= 2:
                return other.field.coerce(self), other
            return self, self.field.coerce(other)
        if isinstance(other, (int, Fraction)):
            return self, self.field.from_rational(other)
        return None

    # Predicates

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    # Arithmetic

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloNum(a.field, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.field, [-x for x in self.coeffs])

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloNum(a.field, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloNum(a.field, [y - x for x, y in zip(a.coeffs, b.coeffs)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum(self.field, [x * other for x in self.coeffs])
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        field = a.field
        if field.degree == 1:
            return CycloNum(field, [a.coeffs[0] * b.coeffs[0]])
        conv = _convolve(a.coeffs, b.coeffs)
        deg = field.degree
        out = conv[:deg]
        for k in range(deg, len(conv)):
            c = conv[k]
            if c:
                row = field._reduction[k]
                out = [out[i] + c * row[i] for i in range(deg)]
        return CycloNum(field, out)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        field = self.field
        if field.degree == 1:
            return CycloNum(field, [1 / self.coeffs[0]])
        g, s, _ = UniPoly(self.coeffs).xgcd(field.modulus)
        if g.degree != 0:
            raise DivisionByZero(f"{self} is not invertible modulo Phi_{field.conductor}")
        s = s % field.modulus
        return CycloNum(field, s.coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return CycloNum(self.field, [x / other for x in self.coeffs])
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def order(self):
        """Multiplicative order if this is a root of unity, else None"""
        if self.is_zero():
            return None
        w = self.field.unit_order
        if self ** w != 1:
            return None
        for k in sorted(m for m in range(1, w + 1) if w % m == 0):
            if self ** k == 1:
                return k
        return None

    # Comparison

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            if other.field is self.field:
                return self.coeffs == other.coeffs
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            return False
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.conductor, self.coeffs))

    # Text

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = 'z' if k == 1 else f"z^{k}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        return "(" + "+".join(terms).replace("+-", "-") + ")"

    def __repr__(self):
        return f"CycloNum({self.field.conductor}, {self})"
