"""Points of G_m and R_m, the maps g_m, and degeneracy-stratum indices."""
from __future__ import annotations

from dataclasses import dataclass

from .exactcore import ExactMatrix, FieldSpec, gaussian_binomial, rank, row_space, subspace_contains
from .p1forms import ModuliParams, jm_matrix, km_matrix
from .sheafpoint import DomainError, H0InjectivityError, SheafMapPoint, check_star, h0_subspace


class StratumError(ValueError):
    """Empty stratum requested, or the two projections disagree on an index."""


@dataclass(frozen=True)
class GrassmannPoint:
    """A ((m+1)s - d)-dimensional subspace of V_m in canonical RREF."""

    params: ModuliParams
    m: int
    basis: ExactMatrix

    def __post_init__(self):
        p = self.params
        if self.m < p.ceil_ds - 1:
            raise DomainError(f"G_m needs m >= ceil(d/s) - 1 = {p.ceil_ds - 1}")
        k = p.grass_rank(self.m)
        if self.basis.cols != p.dim_V(self.m):
            raise ValueError(f"basis has {self.basis.cols} columns, dim V_{self.m} = {p.dim_V(self.m)}")
        canon = row_space(self.basis)
        if canon.rows != k:
            raise ValueError(f"subspace has dimension {canon.rows}, G_{self.m} needs {k}")
        object.__setattr__(self, "basis", canon)

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows


@dataclass(frozen=True)
class RmPoint:
    m: int
    low: GrassmannPoint
    high: GrassmannPoint


@dataclass(frozen=True)
class StratumProfile:
    m: int
    index: int
    stratum_dimension: int
    pr2_fiber: tuple[int, int] | None
    pr1_fiber: tuple[int, int]

    def fiber_point_counts(self, q: int) -> dict[str, int | None]:
        """F_q-point counts of the fibers (quotient Grassmannians)."""
        out: dict[str, int | None] = {"pr2": None}
        if self.pr2_fiber is not None:
            out["pr2"] = gaussian_binomial(self.pr2_fiber[1], self.pr2_fiber[0], q)
        out["pr1"] = gaussian_binomial(self.pr1_fiber[1], self.pr1_fiber[0], q)
        return out


def tensor_H(basis: ExactMatrix) -> ExactMatrix:
    """Rows spanning K (x) H inside V_m (x) H, for K spanned by ``basis`` rows."""
    F = basis.field
    z = F.zero()
    rows = []
    for r in basis.tolist():
        for h in (0, 1):
            v = [z] * (2 * basis.cols)
            v[h::2] = r
            rows.append(v)
    return ExactMatrix(rows, F, cols=2 * basis.cols)


def gm_point(pt: SheafMapPoint, m: int) -> GrassmannPoint:
    """g_m(pt) = H^0(E(m)) inside V_m."""
    p = pt.params
    if m < p.ceil_ds - 1:
        raise DomainError(f"g_m is defined for m >= ceil(d/s) - 1 = {p.ceil_ds - 1}")
    try:
        K = h0_subspace(pt, m)
    except H0InjectivityError as exc:
        raise H0InjectivityError(
            f"condition iii fails; point outside the domain of g_{m} as a morphism to G_{m} ({exc})") from exc
    return GrassmannPoint(p, m, K)


def _empty_low(p: ModuliParams, m: int, field: FieldSpec) -> GrassmannPoint:
    # V_{-1} = 0; only reachable when (m)s - d = 0 with m = 0
    return GrassmannPoint(p, m - 1, ExactMatrix.zeros(0, p.dim_V(m - 1), field))


def rm_point(pt: SheafMapPoint, m: int) -> RmPoint:
    """The point (g_{m-1}(pt), g_m(pt)) of R_m."""
    rep = check_star(pt, m)
    if not rep.holds:
        raise DomainError("(star_%d) fails: %s" % (m, "; ".join(rep.messages)))
    low = gm_point(pt, m - 1) if m >= 1 else _empty_low(pt.params, m, pt.field)
    out = RmPoint(m, low, gm_point(pt, m))
    if not verify_rm(out):
        raise ArithmeticError("constructed pair violates the R_m vanishing condition")
    return out


def _j_image(low: ExactMatrix, m: int, p: ModuliParams) -> ExactMatrix:
    J = jm_matrix(p, m, low.field)
    return low @ J.transpose()


def verify_rm(pr: RmPoint) -> bool:
    """Whether j_m(low) lies in high (x) H."""
    low, high = pr.low, pr.high
    if low.params != high.params or low.m != pr.m - 1 or high.m != pr.m:
        raise ValueError("level mismatch between low and high")
    if low.dim == 0:
        return True
    return subspace_contains(tensor_H(high.basis), _j_image(low.basis, pr.m, low.params))


def pr2_rank(K: GrassmannPoint) -> int:
    """Rank of V_{m-1} -> (V_m / K) (x) H."""
    p, m = K.params, K.m
    KH = tensor_H(K.basis)
    J = jm_matrix(p, m, K.field).transpose()
    return rank(KH.vstack(J)) - KH.rows


def stratum_index_pr2(K: GrassmannPoint) -> int:
    """i = (mr + d) - rank(V_{m-1} -> (V_m/K) (x) H); negative off pr_2(R_m)."""
    p, m = K.params, K.m
    if m < p.ceil_ds or m < 1:
        raise DomainError(f"pr_2 stratification needs m >= max(1, ceil(d/s)) = {max(1, p.ceil_ds)}")
    return m * p.r + p.d - pr2_rank(K)


def pr1_rank(K: GrassmannPoint) -> int:
    """Rank of k_{m+1} restricted to K (x) H^dual."""
    p, m = K.params, K.m
    if K.dim == 0:
        return 0
    Km = km_matrix(p, m + 1, K.field)
    # rows of K (x) H^dual in V_m (x) H^dual coordinates, mapped by k_{m+1}
    return rank(tensor_H(K.basis) @ Km.transpose())


def pr1_threshold(p: ModuliParams, m: int) -> int:
    return min(2 * p.grass_rank(m), p.grass_rank(m + 1))


def stratum_index_pr1(K: GrassmannPoint) -> int:
    """i = min(2((m+1)s-d), (m+2)s-d) - rank(k_{m+1} on K (x) H^dual)."""
    p, m = K.params, K.m
    if m < p.ceil_ds - 1:
        raise DomainError(f"pr_1 stratification needs m >= ceil(d/s) - 1 = {p.ceil_ds - 1}")
    return pr1_threshold(p, m) - pr1_rank(K)


def max_stratum_index(p: ModuliParams, m: int) -> int:
    """Largest index with a nonempty stratum at level m."""
    c = p.ceil_ds
    if m == c - 1:
        l = p.l
        return l - (-(-l // c)) if c > 0 else 0
    return p.d // (m + 1)


def stratum_dimension(p: ModuliParams, m: int, i: int) -> int:
    n, r, s, d = p.n, p.r, p.s, p.d
    c = p.ceil_ds
    if m == c - 1:
        l = p.l
        return n * ((c - 1) * l - c * i) + (n - l + i) * (l - i)
    return n * (d - (m + 1) * i) + (r + i) * (s - i)


def fiber_profile(K: GrassmannPoint) -> StratumProfile:
    """Stratum index of K with the stratum dimension and both fiber shapes.

    Fiber shapes are (ambient, quotient rank) of a quotient Grassmannian.
    At the bottom level m = ceil(d/s) - 1 there is no pr_2 and ``pr2_fiber``
    is None.
    """
    p, m = K.params, K.m
    bottom = m == p.ceil_ds - 1
    i1 = stratum_index_pr1(K)
    if bottom:
        i = i1
    else:
        i2 = stratum_index_pr2(K)
        if i1 < 0 and i2 < 0:
            raise StratumError(f"K lies outside the image (indices pr1={i1}, pr2={i2})")
        if i1 != i2:
            raise StratumError(f"internal inconsistency: pr1 index {i1} != pr2 index {i2}")
        i = i2
    return profile_for_index(p, m, i)


def profile_for_index(p: ModuliParams, m: int, i: int) -> StratumProfile:
    if i < 0:
        raise StratumError(f"negative stratum index {i}")
    if i > max_stratum_index(p, m):
        raise StratumError(f"empty stratum: index {i} > {max_stratum_index(p, m)} at m = {m}")
    n, r, s, d = p.n, p.r, p.s, p.d
    if m == p.ceil_ds - 1:
        c, l = p.ceil_ds, p.l
        pr1 = ((c + 1) * n - 2 * l + i, (c + 1) * r + d)
        pr2 = None
    else:
        pr1 = ((m + 2) * r + d + i, (m + 2) * r + d)
        pr2 = (m * s - d + i, m * s - d)
    return StratumProfile(m, i, stratum_dimension(p, m, i), pr2, pr1)
