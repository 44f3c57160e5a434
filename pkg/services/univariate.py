"""
Univariate polynomials over an exact coefficient ring
Dense coefficient tuples, lowest degree first
"""

from fractions import Fraction

from exceptions import DivisionByZero, InexactDivision


def _scalar_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


class UniPoly:
    """Dense univariate polynomial

    Coefficients may be ints, Fractions, CycloNums or UniPolys; the only
    requirement is that they support ring arithmetic and comparison with 0.
    """

    __slots__ = ('coeffs', 'var')

    def __init__(self, coeffs=(), var='x'):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.var = var

    @classmethod
    def monomial(cls, degree, coeff=1, var='x'):
        return cls([0] * degree + [coeff], var)

    @classmethod
    def x(cls, var='x'):
        return cls([0, 1], var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    # Ring arithmetic

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    def __rmul__(self, other):
        return UniPoly([other * c for c in self.coeffs], self.var)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly([1], self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # Division

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        remainder = list(self.coeffs)
        quotient = [0] * max(len(remainder) - len(other.coeffs) + 1, 0)
        lead = other.lc
        shift_max = len(remainder) - len(other.coeffs)
        for shift in range(shift_max, -1, -1):
            top = remainder[shift + other.degree]
            if top == 0:
                continue
            q = _scalar_div(top, lead)
            quotient[shift] = q
            for k, c in enumerate(other.coeffs):
                remainder[shift + k] = remainder[shift + k] - q * c
        return UniPoly(quotient, self.var), UniPoly(remainder, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        """Exact division; a nonzero remainder is an error"""
        if not isinstance(other, UniPoly):
            if other == 0:
                raise DivisionByZero("polynomial division by zero scalar")
            return UniPoly([_scalar_div(c, other) for c in self.coeffs], self.var)
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InexactDivision(f"{self} is not divisible by {other}")
        return q

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    # Calculus and evaluation

    def derivative(self):
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def evaluate(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    __call__ = evaluate

    def monic(self):
        if self.is_zero():
            return self
        return self / self.lc

    def gcd(self, other):
        """Monic greatest common divisor over a field"""
        a, b = self, self._lift(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Extended Euclid: returns (g, s, t) with s*self + t*other = g, g monic"""
        r0, r1 = self, self._lift(other)
        s0, s1 = UniPoly([1], self.var), UniPoly((), self.var)
        t0, t1 = UniPoly((), self.var), UniPoly([1], self.var)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        lead = r0.lc
        return r0 / lead, s0 / lead, t0 / lead

    def squarefree_part(self):
        if self.degree < 1:
            return self.monic()
        return (self / self.gcd(self.derivative())).monic()

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = '' if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            text = str(c)
            if mono:
                if c == 1:
                    text = mono
                elif c == -1:
                    text = f"-{mono}"
                else:
                    text = f"{_wrap(text)}*{mono}"
            parts.append(text)
        return " + ".join(parts).replace("+ -", "- ")


def _wrap(text):
    if any(ch in text[1:] for ch in '+-') and not text.startswith('('):
        return f"({text})"
    return text
