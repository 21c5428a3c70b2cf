"""Dense matrices over the rationals with exact arithmetic.

Entries are :class:`fractions.Fraction`. Serialized entries are either bare
integers or strings of the form ``"p/q"``.
"""

import csv
import io
from fractions import Fraction

from geninv.errors import GenInvError, InputError


def parse_entry(value):
    if isinstance(value, bool):
        raise InputError(f"invalid matrix entry {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        try:
            num, _, den = s.partition("/")
            if den:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"invalid matrix entry {value!r}; expected an integer or 'p/q'") from None
    raise InputError(f"invalid matrix entry {value!r}; expected an integer or 'p/q'")


def format_entry(x):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RationalMatrix:
    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise InputError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InputError("matrix rows have different lengths")
        self._rows = tuple(tuple(parse_entry(x) for x in r) for r in rows)
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def _wrap(cls, rows):
        # trusted constructor: rows is a tuple of tuples of Fraction
        m = object.__new__(cls)
        m._rows = rows
        m.rows = len(rows)
        m.cols = len(rows[0])
        return m

    @classmethod
    def zeros(cls, n, m=None):
        z = Fraction(0)
        return cls._wrap(tuple((z,) * (n if m is None else m) for _ in range(n)))

    @classmethod
    def identity(cls, n):
        one, z = Fraction(1), Fraction(0)
        return cls._wrap(tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, *values):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, *blocks):
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r + i][c + j] = b[i, j]
            r += b.rows
            c += b.cols
        return cls._wrap(tuple(tuple(row) for row in out))

    @classmethod
    def from_columns(cls, columns, n):
        if not columns:
            return cls.zeros(n, 1)
        return cls._wrap(tuple(tuple(col[i] for col in columns) for i in range(n)))

    # -- basic protocol ------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def tolist(self):
        return [list(r) for r in self._rows]

    def row(self, i):
        return self._rows[i]

    def column(self, j):
        return tuple(r[j] for r in self._rows)

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"RationalMatrix([{body}])"

    # -- arithmetic ----------------------------------------------------------------

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._same_shape(other)
        return RationalMatrix._wrap(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __sub__(self, other):
        self._same_shape(other)
        return RationalMatrix._wrap(
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __neg__(self):
        return RationalMatrix._wrap(tuple(tuple(-x for x in r) for r in self._rows))

    def scale(self, c):
        c = Fraction(c)
        return RationalMatrix._wrap(tuple(tuple(c * x for x in r) for r in self._rows))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._rows))
        zero = Fraction(0)
        out = []
        for r in self._rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append(tuple(sum((x * col[k] for k, x in nz), zero) for col in cols))
        return RationalMatrix._wrap(tuple(out))

    def __pow__(self, k):
        if not self.is_square:
            raise InputError("only square matrices have powers")
        result = RationalMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self):
        return RationalMatrix._wrap(tuple(zip(*self._rows)))

    def trace(self):
        return sum((self._rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def is_zero(self):
        return not any(x for r in self._rows for x in r)

    def is_idempotent(self):
        return self.is_square and self @ self == self

    def commutes_with(self, other):
        return self @ other == other @ self

    def hstack(self, other):
        if self.rows != other.rows:
            raise InputError("hstack needs equal row counts")
        return RationalMatrix._wrap(tuple(r + s for r, s in zip(self._rows, other._rows)))

    def vstack(self, other):
        if self.cols != other.cols:
            raise InputError("vstack needs equal column counts")
        return RationalMatrix._wrap(self._rows + other._rows)

    def submatrix(self, rows, cols):
        return RationalMatrix._wrap(tuple(tuple(self._rows[i][j] for j in cols) for i in rows))

    # -- elimination ---------------------------------------------------------------

    def rref(self):
        """Reduced row echelon form, rank and pivot columns."""
        m = [list(r) for r in self._rows]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            p = next((i for i in range(r, self.rows) if m[i][c]), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            inv = 1 / m[r][c]
            pivot_row = [x * inv if x else x for x in m[r]]
            m[r] = pivot_row
            nz = [k for k in range(c, self.cols) if pivot_row[k]]
            for i in range(self.rows):
                f = m[i][c]
                if i != r and f:
                    row = m[i]
                    for k in nz:
                        row[k] -= f * pivot_row[k]
            pivots.append(c)
            r += 1
        return RationalMatrix._wrap(tuple(tuple(row) for row in m)), len(pivots), tuple(pivots)

    def rank(self):
        return self.rref()[1]

    def nullspace(self):
        """Basis of ``{x : Ax = 0}`` as a list of column tuples, one per free column."""
        R, _, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -R[i, f]
            basis.append(tuple(v))
        return basis

    def inverse(self):
        """Exact inverse; raises :class:`SingularMatrix` when none exists."""
        if not self.is_square:
            raise SingularMatrix("only square matrices can be inverted")
        n = self.rows
        aug = RationalMatrix._wrap(
            tuple(r + tuple(Fraction(int(i == j)) for j in range(n)) for i, r in enumerate(self._rows))
        )
        R, _, pivots = aug.rref()
        if pivots[:n] != tuple(range(n)) or len(pivots) < n:
            raise SingularMatrix("matrix is singular")
        return RationalMatrix._wrap(tuple(R.row(i)[n:] for i in range(n)))

    def is_invertible(self):
        return self.is_square and self.rank() == self.rows

    def det(self):
        if not self.is_square:
            raise InputError("determinant needs a square matrix")
        m = [list(r) for r in self._rows]
        n = self.rows
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                f = m[i][c] / m[c][c]
                if f:
                    for k in range(c, n):
                        m[i][k] -= f * m[c][k]
        return d

    def nilpotency_degree(self):
        """Least k >= 1 with A^k = 0 (k = 0 never occurs), or None if not nilpotent."""
        if not self.is_square:
            raise InputError("nilpotency needs a square matrix")
        P = self
        for k in range(1, self.rows + 1):
            if P.is_zero():
                return k
            P = P @ self
        return None

    def is_nilpotent(self):
        return self.nilpotency_degree() is not None

    def charpoly(self):
        """Coefficients of det(tI - A), highest degree first (Faddeev-LeVerrier)."""
        n = self.rows
        coeffs = [Fraction(1)]
        I = RationalMatrix.identity(n)
        M = RationalMatrix.zeros(n)
        c = Fraction(1)
        for k in range(1, n + 1):
            M = self @ M + I.scale(c)
            c = -(self @ M).trace() / k
            coeffs.append(c)
        return coeffs

    # -- serialization -------------------------------------------------------------

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_entry(x) for x in r] for r in self._rows],
        }

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "entries" not in obj:
            raise InputError("matrix input must be an object with an 'entries' field")
        m = cls(obj["entries"])
        for field, actual in (("rows", m.rows), ("cols", m.cols)):
            if field in obj and int(obj[field]) != actual:
                raise InputError(f"field '{field}' is {obj[field]} but entries give {actual}")
        return m

    @classmethod
    def from_csv(cls, text):
        rows = [r for r in csv.reader(io.StringIO(text)) if any(x.strip() for x in r)]
        return cls(rows)


class SingularMatrix(GenInvError, ArithmeticError):
    pass


def as_matrix(obj):
    return obj if isinstance(obj, RationalMatrix) else RationalMatrix(obj)
