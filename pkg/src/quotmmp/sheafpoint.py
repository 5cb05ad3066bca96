"""Explicit points of the moduli problem: sheaf maps E -> V (x) O on P^1.

A point is stored with a splitting E = O(-a_1) + ... + O(-a_s); column j of
the n x s matrix holds forms of degree a_j.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from .exactcore import ExactMatrix, FieldSpec, kernel_basis, rank, row_space
from .p1forms import BinaryForm, ModuliParams, determinant, form_gcd, form_vector


class InvalidPointError(ValueError):
    """A sheaf map violating the degree/shape/injectivity invariants."""

    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("; ".join(problems))


class DomainError(ValueError):
    """An operation requested outside its mathematical domain."""


class H0InjectivityError(ValueError):
    """H^0(E(m)) -> V_m is not injective at this point (condition iii fails)."""


class NotLocallyFreeError(ValueError):
    """The cokernel of the point has torsion, so no dual point exists in R'."""


@dataclass(frozen=True, eq=False)
class SheafMapPoint:
    params: ModuliParams
    column_degrees: tuple[int, ...]
    entries: tuple[tuple[BinaryForm, ...], ...]
    field: FieldSpec = dc_field(default_factory=FieldSpec.rationals)

    def __post_init__(self):
        object.__setattr__(self, "column_degrees", tuple(int(a) for a in self.column_degrees))
        object.__setattr__(self, "entries", tuple(tuple(r) for r in self.entries))
        if len(self.entries) != self.params.n:
            raise InvalidPointError([f"expected {self.params.n} rows, got {len(self.entries)}"])
        for row in self.entries:
            if len(row) != len(self.column_degrees):
                raise InvalidPointError(["row length does not match the number of column degrees"])
            for f in row:
                if f.field != self.field:
                    raise InvalidPointError([f"entry over {f.field}, point over {self.field}"])

    @classmethod
    def from_forms(cls, params: ModuliParams, entries, field: FieldSpec, column_degrees=None):
        """Build a point, inferring column degrees from nonzero entries if not given."""
        entries = [list(r) for r in entries]
        if column_degrees is None:
            column_degrees = []
            for j in range(len(entries[0])):
                degs = {row[j].degree for row in entries}
                if len(degs) != 1:
                    raise InvalidPointError([f"column {j} mixes degrees {sorted(degs)}"])
                column_degrees.append(degs.pop())
        return cls(params, tuple(column_degrees), tuple(tuple(r) for r in entries), field)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def s(self) -> int:
        return len(self.column_degrees)

    def column(self, j: int) -> list[BinaryForm]:
        return [row[j] for row in self.entries]

    def maximal_minors(self) -> list[BinaryForm]:
        """s x s minors, rows taken as s-subsets in lexicographic order."""
        d = sum(self.column_degrees)
        return [determinant([self.entries[i] for i in rows], d, self.field)
                for rows in combinations(range(self.n), self.s)]

    def __eq__(self, other):
        if not isinstance(other, SheafMapPoint):
            return NotImplemented
        return (self.params, self.column_degrees, self.entries, self.field) == (
            other.params, other.column_degrees, other.entries, other.field)

    def __hash__(self):
        return hash((self.params, self.column_degrees, self.entries))


def validate(pt: SheafMapPoint) -> list[str]:
    """List the violated invariants of ``pt`` (empty list means valid)."""
    problems = []
    p = pt.params
    a = pt.column_degrees
    if pt.s != p.s:
        problems.append(f"expected s = n - r = {p.s} columns, got {pt.s}")
    if sum(a) != p.d:
        problems.append(f"column degrees sum to {sum(a)}, expected d = {p.d}")
    if any(x < 0 for x in a):
        problems.append("negative column degree")
    if list(a) != sorted(a, reverse=True):
        problems.append("column degrees must be nonincreasing")
    for i, row in enumerate(pt.entries):
        for j, f in enumerate(row):
            if f.degree != a[j]:
                problems.append(f"entry ({i},{j}) has degree {f.degree}, column degree is {a[j]}")
    if problems:
        return problems
    if pt.s > pt.n:
        problems.append("more columns than rows; no nonzero maximal minor")
    elif all(m.is_zero() for m in pt.maximal_minors()):
        problems.append("every maximal minor vanishes (map is not injective)")
    return problems


def require_valid(pt: SheafMapPoint) -> None:
    problems = validate(pt)
    if problems:
        raise InvalidPointError(problems)


def h0_sections(pt: SheafMapPoint, m: int) -> ExactMatrix:
    """Images in V_m of the monomial basis of H^0(E(m)), one row per section.

    Column j contributes ``mu * (column j)`` for every monomial ``mu`` of
    degree ``m - a_j``; the rows are not reduced.
    """
    if any(a > m + 1 for a in pt.column_degrees):
        raise DomainError(f"some column degree exceeds m+1 = {m + 1}; H^1(E(m)) may not vanish")
    F = pt.field
    rows = []
    for j, a in enumerate(pt.column_degrees):
        col = pt.column(j)
        k = m - a
        for b in range(k + 1):
            rows.append(form_vector([f.times_monomial(k - b, b) for f in col], m))
    return ExactMatrix(rows, F, cols=pt.n * (m + 1) if m >= 0 else 0)


def h0_subspace(pt: SheafMapPoint, m: int) -> ExactMatrix:
    """Canonical (RREF) basis of the image of H^0(E(m)) in V_m.

    Raises :class:`H0InjectivityError` if the image has dimension below
    (m+1)s - d, i.e. sections are identified.
    """
    require_valid(pt)
    sec = h0_sections(pt, m)
    basis = row_space(sec)
    if basis.rows < sec.rows:
        raise H0InjectivityError(
            f"H0-injectivity failure at m={m}: image has dimension {basis.rows}, expected {sec.rows}")
    return basis


@dataclass
class StarReport:
    holds: bool
    conditions: dict[str, bool | None]
    messages: list[str]

    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if v is not True]


def check_star(pt: SheafMapPoint, m: int) -> StarReport:
    """Check condition (star_m): i) bookkeeping, ii) a_j <= m, iii) H^0(E(m)) injects."""
    p = pt.params
    if m < p.ceil_ds:
        raise DomainError(f"no model R_m exists below ceil(d/s) = {p.ceil_ds} (m = {m})")
    msgs = validate(pt)
    cond = {"i": not msgs, "ii": None, "iii": None}
    if not cond["i"]:
        return StarReport(False, cond, msgs)
    cond["ii"] = all(a <= m for a in pt.column_degrees)
    if not cond["ii"]:
        msgs.append(f"condition ii fails: max column degree {max(pt.column_degrees)} > m = {m}")
    if all(a <= m + 1 for a in pt.column_degrees):
        sec = h0_sections(pt, m)
        cond["iii"] = rank(sec) == sec.rows == p.grass_rank(m)
        if not cond["iii"]:
            msgs.append(f"condition iii fails: H^0(E({m})) -> V_{m} is not injective")
    else:
        msgs.append("condition iii not evaluated (H^1(E(m)) need not vanish)")
    return StarReport(all(v is True for v in cond.values()), cond, msgs)


def pluecker_point(pt: SheafMapPoint) -> list[BinaryForm]:
    """Maximal minors (degree-d forms) in lexicographic order of row subsets."""
    require_valid(pt)
    minors = pt.maximal_minors()
    if all(f.is_zero() for f in minors):
        raise InvalidPointError(["all maximal minors vanish"])
    return minors


def is_locally_free_quotient(pt: SheafMapPoint) -> bool:
    g = form_gcd(pt.maximal_minors())
    return g is not None and g.degree == 0


def _syzygies(pt: SheafMapPoint, t: int) -> ExactMatrix:
    """Degree-t vectors v (n forms of degree t) with iota^T v = 0, as V_t coordinates."""
    F = pt.field
    n = pt.n
    eqs = []
    for j, a in enumerate(pt.column_degrees):
        col = pt.column(j)
        # coefficient of x^(a+t-k) y^k in sum_i col[i] * v_i
        for k in range(a + t + 1):
            row = [F.zero()] * (n * (t + 1))
            for i in range(n):
                for u, c in enumerate(col[i].coeffs):
                    b = k - u
                    if c and 0 <= b <= t:
                        row[i * (t + 1) + b] = F.add(row[i * (t + 1) + b], c)
            eqs.append(row)
    return kernel_basis(ExactMatrix(eqs, F, cols=n * (t + 1)))


def dualize(pt: SheafMapPoint) -> SheafMapPoint:
    """The point of R' given by the kernel of iota^T : V^dual (x) O -> E^dual.

    Generators are extracted degree by degree; each degree is one kernel
    computation plus a span test against the lower-degree generators.
    """
    require_valid(pt)
    p = pt.params
    if not is_locally_free_quotient(pt):
        raise NotLocallyFreeError("quotient not locally free; dual point undefined in R'°")
    if p.r == 0:
        raise DomainError("r = 0: the dual kernel has rank 0 and R' is not defined")
    F = pt.field
    n = pt.n
    gens: list[tuple[int, list]] = []  # (degree, V_t coordinates)
    for t in range(p.d + 1):
        W = _syzygies(pt, t)
        if W.rows == 0:
            continue
        span = []
        for b, g in gens:
            forms = [BinaryForm(b, g[i * (b + 1):(i + 1) * (b + 1)], F) for i in range(n)]
            for e in range(t - b + 1):
                span.append(form_vector([f.times_monomial(t - b - e, e) for f in forms], t))
        current = ExactMatrix(span, F, cols=n * (t + 1))
        cur_rank = rank(current)
        for w in W.tolist():
            trial = current.vstack(ExactMatrix([w], F))
            rk = rank(trial)
            if rk > cur_rank:
                gens.append((t, w))
                current, cur_rank = trial, rk
        if len(gens) >= p.r:
            break
    if len(gens) != p.r or sum(b for b, _ in gens) != p.d:
        raise ArithmeticError(
            f"dual kernel generators have degrees {[b for b, _ in gens]}, expected {p.r} summing to {p.d}")
    gens.sort(key=lambda bg: -bg[0])
    entries = []
    for i in range(n):
        entries.append(tuple(BinaryForm(b, g[i * (b + 1):(i + 1) * (b + 1)], F) for b, g in gens))
    return SheafMapPoint(p.dual(), tuple(b for b, _ in gens), tuple(entries), F)


def complement_sign(rows: Sequence[int], n: int) -> int:
    """Sign of the permutation listing ``rows`` then their complement (both increasing)."""
    inv = 0
    rs = set(rows)
    comp = [i for i in range(n) if i not in rs]
    for a in rows:
        inv += sum(1 for c in comp if c < a)
    return -1 if inv % 2 else 1


def split_type_index(column_degrees: Sequence[int], m: int) -> int:
    """pr_2 stratum index of g_m at a point with splitting a: #{j : a_j = m+1}."""
    return sum(1 for a in column_degrees if a == m + 1)
