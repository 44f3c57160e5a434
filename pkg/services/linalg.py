"""
Exact dense linear algebra
Fraction-free (Bareiss) elimination over Q, Q(zeta_n) and polynomial rings
"""

import logging
from fractions import Fraction

from exceptions import NonSquare, SingularMatrix
from services.univariate import UniPoly, _scalar_div

logger = logging.getLogger(__name__)


def _normalize_entry(value, field):
    if field is not None:
        return field.coerce(value)
    if isinstance(value, int):
        return Fraction(value)
    return value


class ExactMatrix:
    """Rectangular matrix with exact entries, immutable by convention"""

    __slots__ = ('rows', 'cols', 'field', 'entries')

    def __init__(self, entries, cols=None, field=None):
        grid = [list(r) for r in entries]
        if cols is None:
            if not grid:
                raise ValueError("an empty matrix needs an explicit column count")
            cols = len(grid[0])
        for r in grid:
            if len(r) != cols:
                raise ValueError(f"ragged matrix: row of length {len(r)}, expected {cols}")

        # A polynomial entry lifts every entry into the polynomial ring
        if field is None and any(isinstance(x, UniPoly) for r in grid for x in r):
            grid = [[x if isinstance(x, UniPoly) else UniPoly([x], 't') for x in r] for r in grid]

        self.rows = len(grid)
        self.cols = cols
        self.field = field
        self.entries = tuple(tuple(_normalize_entry(x, field) for x in r) for r in grid)

    @classmethod
    def identity(cls, n, field=None):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, field)

    @classmethod
    def from_columns(cls, columns, field=None):
        columns = [list(c) for c in columns]
        if not columns:
            raise ValueError("no columns given")
        return cls([list(r) for r in zip(*columns)], len(columns), field)

    @property
    def zero(self):
        return self.field.zero if self.field is not None else Fraction(0)

    @property
    def one(self):
        return self.field.one if self.field is not None else Fraction(1)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def column(self, j):
        return [r[j] for r in self.entries]

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            out = []
            for i in range(self.rows):
                out.append([
                    sum((self.entries[i][k] * other.entries[k][j] for k in range(self.cols)), self.zero)
                    for j in range(other.cols)
                ])
            return ExactMatrix(out, other.cols, self.field)
        return self.apply(other)

    def apply(self, vector):
        """Matrix-vector product"""
        vector = list(vector)
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} for {self.cols} columns")
        return [sum((a * b for a, b in zip(r, vector)), self.zero) for r in self.entries]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        return hash((self.cols, self.entries))

    def stack(self, other):
        """Rows of self followed by rows of other"""
        if other.cols != self.cols:
            raise ValueError("cannot stack matrices with different column counts")
        return ExactMatrix(self.entries + other.entries, self.cols, self.field)

    # Elimination

    def echelon(self):
        """Bareiss fraction-free row echelon form

        Returns:
            (echelon rows, pivot columns, sign of the row permutation)
        """
        grid = [list(r) for r in self.entries]
        pivots = []
        sign = 1
        prev = None
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            p = next((i for i in range(r, self.rows) if grid[i][c] != 0), None)
            if p is None:
                continue
            if p != r:
                grid[p], grid[r] = grid[r], grid[p]
                sign = -sign
            pivot = grid[r][c]
            for i in range(r + 1, self.rows):
                lead = grid[i][c]
                for j in range(c + 1, self.cols):
                    value = pivot * grid[i][j] - lead * grid[r][j]
                    grid[i][j] = value if prev is None else _scalar_div(value, prev)
                grid[i][c] = self.zero
            prev = pivot
            pivots.append(c)
            r += 1
        logger.debug(f"echelon of {self.rows}x{self.cols}: rank {len(pivots)}")
        return grid, pivots, sign

    def rank(self):
        return len(self.echelon()[1])

    def determinant(self):
        if self.rows != self.cols:
            raise NonSquare(f"determinant of a {self.rows}x{self.cols} matrix")
        n = self.rows
        if n == 0:
            return self.one
        grid, pivots, sign = self.echelon()
        if len(pivots) < n:
            return self.zero
        det = grid[n - 1][n - 1]
        return det if sign == 1 else -det

    def nullspace(self):
        """Basis of the right nullspace, each vector scaled to lead with 1"""
        grid, pivots, _ = self.echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            x = [self.zero] * self.cols
            x[f] = self.one
            for k in range(len(pivots) - 1, -1, -1):
                c = pivots[k]
                total = self.zero
                for j in range(c + 1, self.cols):
                    if x[j] != 0 and grid[k][j] != 0:
                        total = total + grid[k][j] * x[j]
                x[c] = _scalar_div(-total, grid[k][c])
            basis.append(scale_to_leading_one(x))
        return basis

    def inverse(self):
        """Gauss-Jordan inverse over a field"""
        if self.rows != self.cols:
            raise NonSquare(f"inverse of a {self.rows}x{self.cols} matrix")
        n = self.rows
        grid = [list(r) + [self.one if i == j else self.zero for j in range(n)]
                for i, r in enumerate(self.entries)]
        for c in range(n):
            p = next((i for i in range(c, n) if grid[i][c] != 0), None)
            if p is None:
                raise SingularMatrix("matrix is not invertible")
            grid[p], grid[c] = grid[c], grid[p]
            pivot = grid[c][c]
            grid[c] = [_scalar_div(x, pivot) for x in grid[c]]
            for i in range(n):
                if i != c and grid[i][c] != 0:
                    factor = grid[i][c]
                    grid[i] = [a - factor * b for a, b in zip(grid[i], grid[c])]
        return ExactMatrix([r[n:] for r in grid], n, self.field)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"


def scale_to_leading_one(vector):
    lead = next((x for x in vector if x != 0), None)
    if lead is None or lead == 1:
        return list(vector)
    return [_scalar_div(x, lead) for x in vector]


def rank_of_vectors(vectors, length, field=None):
    """Rank of a family of coefficient vectors"""
    if not vectors:
        return 0
    return ExactMatrix(vectors, length, field).rank()


def in_span(vectors, target, length, field=None):
    """Whether target lies in the span of vectors"""
    base = rank_of_vectors(vectors, length, field)
    return rank_of_vectors(list(vectors) + [target], length, field) == base
