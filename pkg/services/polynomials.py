"""
Sparse multivariate polynomials over Q(zeta_n)
Exponent tuples map to nonzero CycloNum coefficients; graded-lex order with X0 highest
"""

import logging
from functools import lru_cache

from exceptions import InexactDivision, NonSquare, SingularMatrix, ZeroPolynomial
from services.fields import CycloNum
from services.univariate import UniPoly

logger = logging.getLogger(__name__)


def order_key(exp):
    """Sort key for the canonical monomial order (use with reverse=True)"""
    return (sum(exp), exp)


@lru_cache(maxsize=None)
def monomials(nvars, degree):
    """All exponent tuples of total degree `degree`, in canonical (descending) order"""
    if degree < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class MultiPoly:
    """Sparse polynomial in `nvars` variables X0..X_{nvars-1}"""

    __slots__ = ('field', 'nvars', 'terms')

    def __init__(self, field, nvars, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not have {nvars} entries")
                coeff = field.coerce(coeff)
                if coeff:
                    clean[exp] = coeff
        self.terms = clean

    @classmethod
    def _raw(cls, field, nvars, terms):
        poly = cls.__new__(cls)
        poly.field = field
        poly.nvars = nvars
        poly.terms = terms
        return poly

    # Constructors

    @classmethod
    def zero(cls, field, nvars):
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, value):
        return cls(field, nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, field, nvars, index):
        exp = [0] * nvars
        exp[index] = 1
        return cls(field, nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, field, exp, coeff=1):
        return cls(field, len(exp), {tuple(exp): coeff})

    @classmethod
    def from_linear(cls, field, coeffs):
        """The linear form sum coeffs[i] * X_i"""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(field, n, terms)

    @classmethod
    def from_vector(cls, field, nvars, basis, vector):
        """Combine the monomials in `basis` with the coefficients in `vector`"""
        return cls(field, nvars, {exp: c for exp, c in zip(basis, vector)})

    # Basic properties

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_degree(self):
        if self.is_zero():
            raise ZeroPolynomial("the zero polynomial has no degree")
        if not self.is_homogeneous():
            return None
        return self.degree

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: order_key(item[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        exp = max(self.terms, key=order_key)
        return exp, self.terms[exp]

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.field.zero)

    def coefficient_vector(self, basis):
        return [self.coefficient(exp) for exp in basis]

    def depends_on(self, index):
        return any(e[index] for e in self.terms)

    def monic(self):
        if self.is_zero():
            return self
        _, lead = self.leading_term()
        return self * lead.inverse()

    # Ring arithmetic

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.field, self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            total = terms.get(exp)
            total = c if total is None else total + c
            if total:
                terms[exp] = total
            else:
                terms.pop(exp, None)
        return MultiPoly._raw(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.field.coerce(other)
            if not c:
                return MultiPoly.zero(self.field, self.nvars)
            return MultiPoly._raw(self.field, self.nvars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = _add_exp(e1, e2)
                prod = c1 * c2
                total = terms.get(exp)
                terms[exp] = prod if total is None else total + prod
        return MultiPoly._raw(self.field, self.nvars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, divisor):
        """Multivariate division by a single divisor; the remainder must vanish"""
        if not isinstance(divisor, MultiPoly):
            return self * self.field.coerce(divisor).inverse()
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        lead_exp, lead_coeff = divisor.leading_term()
        lead_inv = lead_coeff.inverse()
        rest = dict(self.terms)
        quotient = {}
        while rest:
            exp = max(rest, key=order_key)
            if not _divides(lead_exp, exp):
                raise InexactDivision(f"division leaves a remainder term at {exp}")
            q_exp = tuple(a - b for a, b in zip(exp, lead_exp))
            q_coeff = rest[exp] * lead_inv
            quotient[q_exp] = q_coeff
            for d_exp, d_coeff in divisor.terms.items():
                target = _add_exp(q_exp, d_exp)
                value = rest.get(target, self.field.zero) - q_coeff * d_coeff
                if value:
                    rest[target] = value
                else:
                    rest.pop(target, None)
        return MultiPoly._raw(self.field, self.nvars, quotient)

    def __truediv__(self, other):
        return self.exact_div(other)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, CycloNum)) or hasattr(other, 'numerator'):
            return self == MultiPoly.constant(self.field, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # Calculus, evaluation, substitution

    def partial_derivative(self, index):
        if not 0 <= index < self.nvars:
            raise ValueError(f"no variable X{index} among {self.nvars}")
        terms = {}
        for exp, c in self.terms.items():
            k = exp[index]
            if k:
                new = list(exp)
                new[index] = k - 1
                terms[tuple(new)] = c * k
        return MultiPoly._raw(self.field, self.nvars, terms)

    def gradient(self):
        return [self.partial_derivative(i) for i in range(self.nvars)]

    def evaluate(self, point):
        point = [self.field.coerce(x) for x in point]
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, need {self.nvars}")
        powers = [{0: self.field.one} for _ in point]
        total = self.field.zero
        for exp, c in self.terms.items():
            term = c
            for i, k in enumerate(exp):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = point[i] ** k
                    term = term * cache[k]
            total = total + term
        return total

    def compose(self, images):
        """Substitute X_i -> images[i] (polynomials sharing one variable count)"""
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0].nvars
        powers = [{0: MultiPoly.constant(self.field, target, 1)} for _ in images]
        result = MultiPoly.zero(self.field, target)
        acc = {}
        for exp, c in self.terms.items():
            term = None
            for i, k in enumerate(exp):
                if not k:
                    continue
                cache = powers[i]
                if k not in cache:
                    cache[k] = images[i] ** k
                term = cache[k] if term is None else term * cache[k]
            if term is None:
                term = powers[0][0]
            for e, v in term.terms.items():
                prod = v * c
                total = acc.get(e)
                acc[e] = prod if total is None else total + prod
        result = MultiPoly._raw(self.field, target, {e: v for e, v in acc.items() if v})
        return result

    def substitute_linear(self, matrix):
        """Compose with X_i -> sum_j M[i][j] * Y_j for an invertible square M"""
        if matrix.rows != matrix.cols:
            raise NonSquare(f"substitution matrix is {matrix.rows}x{matrix.cols}")
        if matrix.rows != self.nvars:
            raise ValueError(f"matrix size {matrix.rows} does not match {self.nvars} variables")
        if matrix.rank() != matrix.rows:
            raise SingularMatrix("substitution matrix is not invertible")
        return self.compose(linear_images(self.field, matrix))

    def embed(self, nvars, positions):
        """Rename X_i -> X_{positions[i]} inside a ring with `nvars` variables"""
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * nvars
            for i, k in enumerate(exp):
                new[positions[i]] += k
            terms[tuple(new)] = c
        return MultiPoly._raw(self.field, nvars, terms)

    def drop_variables(self, indices):
        """Remove variables the polynomial does not depend on"""
        indices = set(indices)
        for i in indices:
            if self.depends_on(i):
                raise ValueError(f"polynomial depends on X{i}")
        keep = [i for i in range(self.nvars) if i not in indices]
        terms = {tuple(exp[i] for i in keep): c for exp, c in self.terms.items()}
        return MultiPoly._raw(self.field, len(keep), terms)

    def to_univariate(self, index, var='x'):
        """Coefficients of a polynomial in one variable (others must be absent)"""
        coeffs = [self.field.zero] * (max((e[index] for e in self.terms), default=0) + 1)
        for exp, c in self.terms.items():
            if any(k for i, k in enumerate(exp) if i != index):
                raise ValueError("polynomial is not univariate")
            coeffs[exp[index]] = c
        return UniPoly(coeffs, var)

    # Text

    def to_string(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"X{i}" for i in range(self.nvars)]
        pieces = []
        for exp, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(exp):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append(f"{names[i]}^{k}")
            mono = "*".join(factors)
            negative = c.is_rational() and c.coeffs[0] < 0
            magnitude = -c if negative else c
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            pieces.append(("-" if negative else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"MultiPoly(Q(zeta_{self.field.conductor}), {self.nvars}, {self})"


def linear_images(field, matrix):
    """The linear forms sum_j M[i][j] Y_j, one per row of M"""
    return [MultiPoly.from_linear(field, matrix.row(i)) for i in range(matrix.rows)]


class BinaryForm:
    """A binary form c(s, u) = sum_k coeffs[k] * s^k * u^(degree-k)"""

    __slots__ = ('field', 'degree', 'coeffs')

    def __init__(self, field, degree, coeffs):
        coeffs = [field.coerce(c) for c in coeffs]
        coeffs += [field.zero] * (degree + 1 - len(coeffs))
        self.field = field
        self.degree = degree
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_poly(cls, poly, degree):
        """From a MultiPoly in two variables (s, u), homogeneous of `degree`"""
        coeffs = [poly.field.zero] * (degree + 1)
        for (ks, ku), c in poly.terms.items():
            if ks + ku != degree:
                raise ValueError("binary form is not homogeneous of the stated degree")
            coeffs[ks] = c
        return cls(poly.field, degree, coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def dehomogenized(self, var='s'):
        """The polynomial c(s, 1)"""
        return UniPoly(self.coeffs, var)

    def infinity_multiplicity(self):
        """Multiplicity of the root (1:0)"""
        return self.degree - self.dehomogenized().degree

    def evaluate(self, s, u):
        total = self.field.zero
        for k, c in enumerate(self.coeffs):
            if c:
                total = total + c * (self.field.coerce(s) ** k) * (self.field.coerce(u) ** (self.degree - k))
        return total

    def __str__(self):
        poly = MultiPoly(self.field, 2, {(k, self.degree - k): c for k, c in enumerate(self.coeffs)})
        return poly.to_string(['s', 'u'])