"""Exact field arithmetic over Q and F_p, and dense matrix linear algebra.

Elements of Q are :class:`fractions.Fraction`; elements of F_p are Python
ints reduced into ``[0, p)``.  Nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Iterable, Sequence


class FieldMismatchError(ValueError):
    """Raised when elements or matrices over different fields are combined."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (characteristic 0) or a prime field F_p."""

    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "Fp":
            if not _is_prime(self.characteristic):
                raise ValueError(f"{self.characteristic} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q", 0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("Fp", int(p))

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "Fp"

    def __str__(self):
        return "Q" if self.kind == "Q" else f"F_{self.characteristic}"

    # -- element handling -------------------------------------------------

    def coerce(self, x):
        """Convert an int/Fraction (or numpy integer) into a canonical element."""
        tx = type(x)
        if tx is int:
            return Fraction(x) if self.kind == "Q" else x % self.characteristic
        if tx is Fraction and self.kind == "Q":
            return x
        if isinstance(x, bool) or not isinstance(x, (Integral, Rational)):
            raise FieldMismatchError(f"{x!r} is not an exact element of {self}")
        if self.kind == "Q":
            return Fraction(x)
        p = self.characteristic
        if isinstance(x, Integral):
            return int(x) % p
        x = Fraction(x)
        if x.denominator % p == 0:
            raise FieldMismatchError(f"{x} has denominator divisible by {p}")
        return x.numerator * pow(x.denominator, -1, p) % p

    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.kind == "Q" else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.kind == "Q" else (-a) % self.characteristic

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a) -> str:
        return str(a)


QQ = FieldSpec.rationals()


class ExactMatrix:
    """Immutable dense matrix over a :class:`FieldSpec`.

    Zero-row and zero-column matrices are allowed; ``cols`` must then be
    given explicitly when there are no rows.
    """

    __slots__ = ("rows", "cols", "field", "_data")

    def __init__(self, rows: Iterable[Sequence], field: FieldSpec = QQ, cols: int | None = None):
        data = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(data)
        self.cols = int(cols)
        self.field = field
        self._data = data

    @classmethod
    def _trusted(cls, data, field, cols):
        m = cls.__new__(cls)
        m._data = tuple(tuple(r) for r in data)
        m.rows = len(m._data)
        m.cols = cols
        m.field = field
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QQ) -> "ExactMatrix":
        z = field.zero()
        return cls._trusted([[z] * cols for _ in range(rows)], field, cols)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "ExactMatrix":
        z, o = field.zero(), field.one()
        return cls._trusted([[o if i == j else z for j in range(n)] for i in range(n)], field, n)

    # -- access -----------------------------------------------------------

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        """Row-major flat tuple of entries."""
        return tuple(x for r in self._data for x in r)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        return hash((self.field, self.cols, self._data))

    def __repr__(self):
        return f"ExactMatrix({self.tolist()!r}, field={self.field}, cols={self.cols})"

    # -- algebra ----------------------------------------------------------

    def _check_field(self, other: "ExactMatrix"):
        if self.field != other.field:
            raise FieldMismatchError(f"cannot combine matrices over {self.field} and {other.field}")

    def transpose(self) -> "ExactMatrix":
        cols = [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return ExactMatrix._trusted(cols, self.field, self.rows)

    T = property(transpose)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        ot = other.transpose()._data
        out = []
        for r in self._data:
            row = []
            for c in ot:
                acc = sum(a * b for a, b in zip(r, c) if a and b)
                row.append(F.coerce(acc) if F.kind == "Fp" else Fraction(acc))
            out.append(row)
        return ExactMatrix._trusted(out, F, other.cols)

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return ExactMatrix._trusted(self._data + other._data, self.field, self.cols)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        data = [a + b for a, b in zip(self._data, other._data)]
        return ExactMatrix._trusted(data, self.field, self.cols + other.cols)

    def rref(self) -> tuple["ExactMatrix", int, list[int]]:
        return rref(self)

    def rank(self) -> int:
        return rref(self)[1]


def rref(m: ExactMatrix) -> tuple[ExactMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.

    Pivot choice is the first nonzero entry in the column, scanning down
    from the current pivot row.
    """
    F = m.field
    rows = [list(r) for r in m._data]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    pr = 0
    for c in range(ncols):
        if pr == nrows:
            break
        piv = next((i for i in range(pr, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        inv = F.inv(rows[pr][c])
        rows[pr] = [F.mul(x, inv) for x in rows[pr]]
        prow = rows[pr]
        for i in range(nrows):
            if i != pr and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], prow)]
        pivots.append(c)
        pr += 1
    return ExactMatrix._trusted(rows, F, ncols), pr, pivots


def rank(m: ExactMatrix) -> int:
    return rref(m)[1]


def row_space(m: ExactMatrix) -> ExactMatrix:
    """Canonical basis of the row space: the nonzero rows of the RREF."""
    r, k, _ = rref(m)
    return ExactMatrix._trusted(r._data[:k], m.field, m.cols)


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Basis of the right null space ``{v : m v = 0}`` as rows, in RREF."""
    F = m.field
    r, k, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero()] * m.cols
        v[f] = F.one()
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(r[i, f])
        basis.append(v)
    return row_space(ExactMatrix._trusted(basis, F, m.cols)) if basis else ExactMatrix.zeros(0, m.cols, F)


def subspace_contains(big: ExactMatrix, small: ExactMatrix) -> bool:
    """Whether the row space of ``small`` lies in the row space of ``big``."""
    if small.rows == 0:
        return True
    return rank(big.vstack(small)) == rank(big)


def gaussian_binomial(subdim: int, ambient: int, q: int) -> int:
    """Number of ``subdim``-dimensional subspaces of ``F_q^ambient``."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if subdim < 0 or subdim > ambient:
        raise ValueError(f"need 0 <= subdim <= ambient, got ({subdim}, {ambient})")
    k = min(subdim, ambient - subdim)
    num = den = 1
    for i in range(k):
        num *= q ** (ambient - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
