"""Binary forms on P^1, the spaces V_m = V (x) H^0(O(m)) and the maps j_m, k_m.

Fixed conventions used throughout the package:

* monomials of degree m are ordered x^m, x^(m-1) y, ..., y^m;
* ``V_m`` has basis ``e_i (x) x^(m-j) y^j`` at position ``i*(m+1) + j``;
* ``V_m (x) H`` has basis ``(V_m basis vector) (x) h`` at ``2*idx + h`` with
  ``h = 0`` for x and ``h = 1`` for y (same layout for ``H^dual`` with x^v, y^v);
* ``j_m(v (x) f) = v (x) xf (x) y - v (x) yf (x) x``;
* ``k_m(v (x) f (x) x^v) = -v.yf`` and ``k_m(v (x) f (x) y^v) = v.xf``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactcore import QQ, ExactMatrix, FieldSpec


class ParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based column of the problem."""

    def __init__(self, msg: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        self.col = pos + 1
        super().__init__(f"{msg} at column {pos + 1}: {text!r}")


@dataclass(frozen=True)
class ModuliParams:
    """Quot scheme parameters: dim V = n, quotient rank r, degree d."""

    n: int
    r: int
    d: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 <= self.r <= self.n - 1:
            raise ValueError(f"need 0 <= r <= n-1, got r={self.r}, n={self.n}")
        if self.d < 0:
            raise ValueError("d must be nonnegative")

    @property
    def s(self) -> int:
        return self.n - self.r

    @property
    def ceil_ds(self) -> int:
        return -(-self.d // self.s)

    @property
    def floor_ds(self) -> int:
        return self.d // self.s

    @property
    def l(self) -> int:
        return self.ceil_ds * self.s - self.d

    @property
    def dim_R(self) -> int:
        return self.n * self.d + self.r * self.s

    def dim_V(self, m: int) -> int:
        return self.n * (m + 1) if m >= 0 else 0

    def grass_rank(self, m: int) -> int:
        """Dimension (m+1)s - d of the subspaces parametrized by G_m."""
        return (m + 1) * self.s - self.d

    def dual(self) -> "ModuliParams":
        """Parameters of R', the rank-s degree-d quotients of V^dual."""
        return ModuliParams(self.n, self.s, self.d)


class BinaryForm:
    """Homogeneous polynomial of a fixed degree in x, y.

    ``coeffs[j]`` is the coefficient of ``x^(degree-j) y^j``.
    """

    __slots__ = ("degree", "coeffs", "field")

    def __init__(self, degree: int, coeffs: Sequence, field: FieldSpec = QQ):
        if degree < 0:
            raise ValueError("negative degree")
        if len(coeffs) != degree + 1:
            raise ValueError(f"degree {degree} form needs {degree + 1} coefficients, got {len(coeffs)}")
        self.degree = degree
        self.field = field
        self.coeffs = tuple(field.coerce(c) for c in coeffs)

    @classmethod
    def zero(cls, degree: int, field: FieldSpec = QQ) -> "BinaryForm":
        return cls(degree, [0] * (degree + 1), field)

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1, field: FieldSpec = QQ) -> "BinaryForm":
        c = [0] * (a + b + 1)
        c[b] = coeff
        return cls(a + b, c, field)

    @classmethod
    def constant(cls, c, field: FieldSpec = QQ) -> "BinaryForm":
        return cls(0, [c], field)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return (self.degree, self.coeffs, self.field) == (other.degree, other.coeffs, other.field)

    def __hash__(self):
        return hash((self.degree, self.coeffs, self.field))

    def __repr__(self):
        return f"BinaryForm({self.degree}, {list(self.coeffs)!r}, {self.field})"

    def __str__(self):
        return format_form(self)

    def _same(self, other: "BinaryForm"):
        if self.field != other.field:
            raise ValueError("forms over different fields")

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        self._same(other)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        F = self.field
        return BinaryForm(self.degree, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)], F)

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, [self.field.neg(a) for a in self.coeffs], self.field)

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other) -> "BinaryForm":
        F = self.field
        if not isinstance(other, BinaryForm):
            c = F.coerce(other)
            return BinaryForm(self.degree, [F.mul(a, c) for a in self.coeffs], F)
        self._same(other)
        out = [F.zero()] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return BinaryForm(self.degree + other.degree, out, F)

    __rmul__ = __mul__

    def times_monomial(self, a: int, b: int) -> "BinaryForm":
        """Multiply by x^a y^b."""
        z = self.field.zero()
        return BinaryForm(self.degree + a + b, [z] * b + list(self.coeffs) + [z] * a, self.field)

    def y_valuation(self) -> int:
        """Largest e with y^e dividing the form (degree+1 for the zero form)."""
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        return self.degree + 1

    def dehomogenize(self) -> list:
        """Coefficients of f(x, 1), constant term first, trailing zeros stripped."""
        out = list(reversed(self.coeffs))
        while out and not out[-1]:
            out.pop()
        return out


def _poly_rem(a: list, b: list, F: FieldSpec) -> list:
    a = list(a)
    inv = F.inv(b[-1])
    while len(a) >= len(b):
        f = F.mul(a[-1], inv)
        shift = len(a) - len(b)
        for k, c in enumerate(b):
            a[shift + k] = F.sub(a[shift + k], F.mul(f, c))
        a.pop()
        while a and not a[-1]:
            a.pop()
    return a


def form_gcd(forms: Sequence[BinaryForm]) -> BinaryForm | None:
    """Monic gcd of binary forms (None when every form is zero).

    Monic means the x-free part ``gcd(f(x,1))`` is monic; the y-part is y^e.
    """
    nz = [f for f in forms if not f.is_zero()]
    if not nz:
        return None
    F = nz[0].field
    e = min(f.y_valuation() for f in nz)
    g: list = []
    for f in nz:
        h = f.dehomogenize()
        a, b = (g, h) if len(g) >= len(h) else (h, g)
        while b:
            a, b = b, _poly_rem(a, b, F)
        g = a
    inv = F.inv(g[-1])
    g = [F.mul(c, inv) for c in g]
    deg = len(g) - 1 + e
    coeffs = [F.zero()] * (deg + 1)
    # g[k] multiplies x^k; in degree `deg` that is coefficient index deg-k
    for k, c in enumerate(g):
        coeffs[deg - k] = c
    return BinaryForm(deg, coeffs, F)


def determinant(rows: Sequence[Sequence[BinaryForm]], degree: int, field: FieldSpec) -> BinaryForm:
    """Determinant of a square matrix of forms by cofactor expansion along row 0.

    ``degree`` is the degree of the result, used when the determinant vanishes.
    """
    k = len(rows)

    def rec(r: int, cols: tuple[int, ...]) -> BinaryForm | None:
        # None stands for an identically zero minor
        if r == k:
            return BinaryForm.constant(1, field)
        total = None
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            sub = rec(r + 1, cols[:pos] + cols[pos + 1:])
            if sub is None:
                continue
            term = entry * sub
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        return total

    out = rec(0, tuple(range(k)))
    return out if out is not None else BinaryForm.zero(degree, field)


# -- structural maps ------------------------------------------------------

def basis_index(params: ModuliParams, m: int, i: int, j: int) -> int:
    """Position of e_i (x) x^(m-j) y^j in the ordered basis of V_m."""
    if not 0 <= i < params.n or not 0 <= j <= m:
        raise IndexError(f"basis index (i={i}, j={j}) out of range for n={params.n}, m={m}")
    return i * (m + 1) + j


@lru_cache(maxsize=256)
def jm_matrix(params: ModuliParams, m: int, field: FieldSpec = QQ) -> ExactMatrix:
    """Matrix of j_m : V_{m-1} -> V_m (x) H; columns are images of basis vectors."""
    if m <= 0:
        raise ValueError("j_m is defined here for m >= 1")
    n = params.n
    rows, cols = 2 * n * (m + 1), n * m
    z = field.zero()
    data = [[z] * cols for _ in range(rows)]
    one, mone = field.one(), field.neg(field.one())
    for i in range(n):
        for j in range(m):
            c = i * m + j
            # x*f (x) y
            data[2 * (i * (m + 1) + j) + 1][c] = one
            # - y*f (x) x
            data[2 * (i * (m + 1) + j + 1)][c] = mone
    return ExactMatrix._trusted(data, field, cols)


@lru_cache(maxsize=256)
def km_matrix(params: ModuliParams, m: int, field: FieldSpec = QQ) -> ExactMatrix:
    """Matrix of k_m : V_{m-1} (x) H^dual -> V_m; columns are images of basis vectors."""
    if m <= 0:
        raise ValueError("k_m is defined here for m >= 1")
    n = params.n
    rows, cols = n * (m + 1), 2 * n * m
    z = field.zero()
    data = [[z] * cols for _ in range(rows)]
    one, mone = field.one(), field.neg(field.one())
    for i in range(n):
        for j in range(m):
            src = i * m + j
            data[i * (m + 1) + j + 1][2 * src] = mone  # x^v: -(y f)
            data[i * (m + 1) + j][2 * src + 1] = one  # y^v: x f
    return ExactMatrix._trusted(data, field, cols)


@lru_cache(maxsize=256)
def multiplication_matrix(params: ModuliParams, m: int, field: FieldSpec = QQ) -> ExactMatrix:
    """Matrix of the evaluation V_m (x) H -> V_{m+1}, v (x) f (x) h -> v.hf."""
    n = params.n
    rows, cols = n * (m + 2), 2 * n * (m + 1)
    z = field.zero()
    data = [[z] * cols for _ in range(rows)]
    one = field.one()
    for i in range(n):
        for j in range(m + 1):
            src = i * (m + 1) + j
            data[i * (m + 2) + j][2 * src] = one  # times x
            data[i * (m + 2) + j + 1][2 * src + 1] = one  # times y
    return ExactMatrix._trusted(data, field, cols)


def form_vector(forms: Sequence[BinaryForm], m: int) -> list:
    """Coordinates in V_m of the vector sum_i e_i (x) forms[i] (each of degree m)."""
    out = []
    for f in forms:
        if f.degree != m:
            raise ValueError(f"expected degree {m}, got {f.degree}")
        out.extend(f.coeffs)
    return out


def vector_forms(vec: Sequence, n: int, m: int, field: FieldSpec) -> list[BinaryForm]:
    """Inverse of :func:`form_vector`."""
    return [BinaryForm(m, vec[i * (m + 1):(i + 1) * (m + 1)], field) for i in range(n)]


# -- text grammar ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([xy])|(\^)|(\*)|([+-]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mo = _TOKEN.match(text, pos)
        if not mo:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = mo.lastindex
        start = mo.start(kind)
        toks.append((kind, mo.group(kind), start))
        pos = mo.end()
    return toks


def parse_terms(text: str) -> dict[tuple[int, int], Fraction]:
    """Parse polynomial text into ``{(a, b): coeff}`` for terms ``coeff*x^a*y^b``."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial", text, 0)
    terms: dict[tuple[int, int], Fraction] = {}
    k = 0
    first = True
    while k < len(toks):
        sign = 1
        if toks[k][0] == 5:
            sign = -1 if toks[k][1] == "-" else 1
            k += 1
        elif not first:
            raise ParseError("expected '+' or '-'", text, toks[k][2])
        first = False
        coeff = Fraction(sign)
        a = b = 0
        expect_factor = True
        while k < len(toks):
            kind, val, at = toks[k]
            if expect_factor:
                if kind == 1:
                    num, _, den = val.partition("/")
                    if den and int(den) == 0:
                        raise ParseError("zero denominator", text, at)
                    coeff *= Fraction(int(num), int(den) if den else 1)
                    k += 1
                elif kind == 2:
                    k += 1
                    e = 1
                    if k < len(toks) and toks[k][0] == 3:
                        if k + 1 >= len(toks) or toks[k + 1][0] != 1 or "/" in toks[k + 1][1]:
                            raise ParseError("expected integer exponent", text, toks[k][2] + 1)
                        e = int(toks[k + 1][1])
                        k += 2
                    if val == "x":
                        a += e
                    else:
                        b += e
                else:
                    raise ParseError("expected coefficient or variable", text, at)
                expect_factor = False
            elif kind == 4:
                expect_factor = True
                k += 1
            else:
                break
        if expect_factor:
            raise ParseError("dangling operator", text, len(text))
        terms[(a, b)] = terms.get((a, b), Fraction(0)) + coeff
    return terms


def parse_form(text: str, degree: int | None = None, field: FieldSpec = QQ) -> BinaryForm:
    """Parse e.g. ``"3*x^2*y - 1/2*y^3"`` into a :class:`BinaryForm`.

    All nonzero terms must share one total degree, which must equal
    ``degree`` when given; the text ``0`` is the zero form of ``degree``.
    """
    terms = parse_terms(text)
    nz = {}
    for (a, b), c in terms.items():
        c = field.coerce(c)
        if c:
            nz[(a, b)] = c
    degs = {a + b for a, b in nz}
    if len(degs) > 1:
        raise ParseError(f"mixed term degrees {sorted(degs)}", text, 0)
    if degree is None:
        if not degs:
            raise ParseError("degree of the zero form is ambiguous", text, 0)
        degree = degs.pop()
    elif degs and degs != {degree}:
        raise ParseError(f"expected a form of degree {degree}, got degree {degs.pop()}", text, 0)
    coeffs = [field.zero()] * (degree + 1)
    for (a, b), c in nz.items():
        coeffs[b] = c
    return BinaryForm(degree, coeffs, field)


def format_form(f: BinaryForm) -> str:
    """Render in the parseable grammar, e.g. ``x^2 - 3*x*y + 1/2*y^2``."""
    parts = []
    for j, c in enumerate(f.coeffs):
        if not c:
            continue
        a, b = f.degree - j, j
        mono = "*".join(p for p in (
            ("x" if a == 1 else f"x^{a}") if a else "",
            ("y" if b == 1 else f"y^{b}") if b else "") if p)
        neg = f.field.kind == "Q" and c < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"

