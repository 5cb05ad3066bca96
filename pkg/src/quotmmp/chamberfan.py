"""Divisor classes in the (alpha, beta) basis and the Mori chamber decomposition.

Classes are integer pairs (a, b) meaning a*alpha + b*beta; cones are
2-dimensional and handled by integer cross products only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from math import gcd

from .p1forms import ModuliParams


@dataclass(frozen=True, order=True)
class DivisorClass:
    a: int
    b: int

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.a, -self.b)

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.a, k * self.b)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def primitive(self) -> "DivisorClass":
        g = gcd(self.a, self.b)
        return self if g in (0, 1) else DivisorClass(self.a // g, self.b // g)

    def cross(self, other: "DivisorClass") -> int:
        return self.a * other.b - self.b * other.a

    def label(self, a_sym: str = "α", b_sym: str = "β") -> str:
        parts = []
        for coef, sym in ((self.a, a_sym), (self.b, b_sym)):
            if coef == 0:
                continue
            mag = abs(coef)
            body = sym if mag == 1 else f"{mag}{sym}"
            if not parts:
                parts.append(("-" if coef < 0 else "") + body)
            else:
                parts.append(("-" if coef < 0 else "+") + body)
        return "".join(parts) or "0"

    def __str__(self):
        return self.label()


ALPHA = DivisorClass(1, 0)
BETA = DivisorClass(0, 1)


@dataclass(frozen=True)
class Cone2:
    """Cone spanned by two primitive rays, listed counterclockwise."""

    ray1: DivisorClass
    ray2: DivisorClass

    def __post_init__(self):
        if self.ray1.is_zero() or self.ray2.is_zero():
            raise ValueError("cone rays must be nonzero")
        r1, r2 = self.ray1.primitive(), self.ray2.primitive()
        c = r1.cross(r2)
        if c < 0:
            r1, r2 = r2, r1
        elif c == 0 and r1 != r2:
            raise ValueError("opposite rays do not span a strictly convex cone")
        object.__setattr__(self, "ray1", r1)
        object.__setattr__(self, "ray2", r2)

    @property
    def rays(self) -> frozenset:
        return frozenset((self.ray1, self.ray2))

    def __str__(self):
        return f"<{self.ray1}, {self.ray2}>"


def cone_contains(c: Cone2, x: DivisorClass, strict: bool = False) -> bool:
    """Membership of x in the cone (interior only when ``strict``)."""
    if x.is_zero():
        return not strict
    u = c.ray1.cross(x)
    v = x.cross(c.ray2)
    if c.ray1 == c.ray2:
        return not strict and u == 0 and (x.a * c.ray1.a + x.b * c.ray1.b) > 0
    if strict:
        return u > 0 and v > 0
    return u >= 0 and v >= 0


def cone_subset(inner: Cone2, outer: Cone2) -> bool:
    return cone_contains(outer, inner.ray1) and cone_contains(outer, inner.ray2)


def c1_Bm(params: ModuliParams, m: int) -> DivisorClass:
    """c_1(B_m) = -(d-1-m) alpha + beta."""
    if m < -1:
        raise ValueError("c_1(B_m) is defined for m >= -1")
    return DivisorClass(-(params.d - 1 - m), 1)


def canonical_class(params: ModuliParams) -> DivisorClass:
    """K_R = -(n + (2r+2-n)d) alpha - (n-2r) beta (Picard rank 2 case)."""
    n, r, d = params.n, params.r, params.d
    if r > n - 2 or d < 1:
        raise ValueError("Picard rank 1 case: K_R has no (alpha, beta) expression")
    return DivisorClass(-(n + (2 * r + 2 - n) * d), -(n - 2 * r))


def prime_basis_change(c: DivisorClass, d: int) -> DivisorClass:
    """Rewrite a class given in (alpha', beta') in (alpha, beta): beta' = 2d alpha - beta."""
    return DivisorClass(c.a + 2 * d * c.b, -c.b)


def c1_Bm_prime(params: ModuliParams, m: int) -> DivisorClass:
    """c_1(B'_m) on the dual Quot scheme, in the (alpha, beta) basis."""
    return prime_basis_change(DivisorClass(-(params.d - 1 - m), 1), params.d)


@dataclass(frozen=True)
class Chamber:
    model: str
    nef: Cone2


@dataclass(frozen=True)
class WallRecord:
    cls: DivisorClass
    kind: str  # fiber-type | divisorial | small
    target: str
    target_data: dict = field(default_factory=dict, compare=False, hash=False)
    sides: tuple[str, ...] = ()
    contracted: DivisorClass | None = None


@dataclass
class MMPReport:
    params: ModuliParams
    degenerate: bool
    chambers: list[Chamber]
    mov: Cone2 | None
    eff: Cone2 | None
    walls: list[WallRecord]
    canonical: DivisorClass | None
    log_fano: bool
    notes: list[str] = field(default_factory=list)

    @property
    def nef(self) -> Cone2 | None:
        return next((c.nef for c in self.chambers if c.model == "R"), None)


def _ccw_sort(classes, base: DivisorClass):
    def cmp(u, v):
        # angle from base, all within a cone of opening < 180 degrees
        cu, cv = base.cross(u), base.cross(v)
        if (cu >= 0) != (cv >= 0):
            return -1 if cu >= 0 else 1
        c = u.cross(v)
        return -1 if c > 0 else (1 if c < 0 else 0)
    return sorted(classes, key=cmp_to_key(cmp))


def _grass_target(k: int, n: int, m: int, dual: bool) -> tuple[str, dict]:
    vs = "V^∨" if dual else "V"
    return (f"Gr({k}, {vs}⊗H^0(O({m})))", {"type": "grassmannian", "subdim": k, "ambient": n * (m + 1),
                                             "level": m, "dual_side": dual})


def mmp_report(params: ModuliParams) -> MMPReport:
    """Chamber fan of Mov(R) with wall classification and the log Fano check."""
    n, r, d = params.n, params.r, params.d
    if n < 2:
        raise ValueError("need n >= 2")
    s = params.s
    if r == n - 1 or d == 0:
        if d == 0:
            target = f"Gr({s}, V) (Grassmannian)"
        else:
            target = f"P(V^∨⊗H^0(O({d}))^∨)"
        return MMPReport(params, True, [], None, None, [], None, True,
                         [f"Pic(R) = Z; R is {target}; Nef(R) is spanned by the ample generator"])

    fl_s, ce_s = d // s, -(-d // s)
    chambers: list[Chamber] = []
    walls: list[WallRecord] = []

    # primed side (2 <= r), listed counterclockwise from the outer edge
    if r >= 2:
        fl_r, ce_r = d // r, -(-d // r)
        for mp in range(fl_r + 1, d):
            chambers.append(Chamber(f"R'_{mp}", Cone2(c1_Bm_prime(params, mp - 1), c1_Bm_prime(params, mp))))
        chambers.append(Chamber("R'", Cone2(DivisorClass(2 * d, -1), ALPHA)))
    chambers.append(Chamber("R", Cone2(ALPHA, BETA)))
    for m in range(d - 1, fl_s, -1):
        chambers.append(Chamber(f"R_{m}", Cone2(c1_Bm(params, m), c1_Bm(params, m - 1))))

    beta_edge = c1_Bm(params, fl_s)
    eff_beta = c1_Bm(params, ce_s - 1)
    if r == 0:
        mov_alpha, eff_alpha = ALPHA, ALPHA
    elif r == 1:
        mov_alpha, eff_alpha = ALPHA, DivisorClass(2 * d, -1)
    else:
        mov_alpha = c1_Bm_prime(params, fl_r)
        eff_alpha = DivisorClass(d + ce_r, -1)
    mov = Cone2(mov_alpha, beta_edge)
    eff = Cone2(eff_alpha, eff_beta)

    def model_of_R_level(m):
        return "R" if m == d else f"R_{m}"

    # alpha wall
    if r == 0:
        walls.append(WallRecord(ALPHA, "fiber-type", f"P(H^0(O({d}))^∨)",
                                {"type": "projective-space", "dim": d}, ("R",)))
    elif r == 1:
        walls.append(WallRecord(ALPHA, "divisorial", f"P(V⊗H^0(O({d}))^∨)",
                                {"type": "projective-space", "dim": n * (d + 1) - 1}, ("R",),
                                DivisorClass(2 * d, -1)))
    else:
        walls.append(WallRecord(ALPHA, "small", f"K^{d}_{{{s},{r}}} (quantum Grassmannian)",
                                {"type": "quantum-grassmannian", "d": d, "s": s, "r": r}, ("R'", "R")))
    # interior walls on the unprimed side: c1(B_m) between R_m and R_{m+1}
    for m in range(fl_s + 1, d):
        walls.append(WallRecord(c1_Bm(params, m), "small", f"X_{m}^0 ⊂ G_{m}",
                                {"type": "degeneracy-locus", "level": m, "dual_side": False},
                                (model_of_R_level(m + 1), f"R_{m}")))
    # outer wall on the beta side
    side = model_of_R_level(fl_s + 1)
    tname, tdata = _grass_target((fl_s + 1) * s - d, n, fl_s, False)
    if d % s:
        walls.append(WallRecord(beta_edge, "fiber-type", tname, tdata, (side,)))
    else:
        walls.append(WallRecord(beta_edge, "divisorial", tname, tdata, (side,), c1_Bm(params, d // s - 1)))
    if r >= 2:
        def primed_model(mp):
            return "R'" if mp == d else f"R'_{mp}"
        for mp in range(fl_r + 1, d):
            walls.append(WallRecord(c1_Bm_prime(params, mp), "small", f"X'_{mp}^0 ⊂ G'_{mp}",
                                    {"type": "degeneracy-locus", "level": mp, "dual_side": True},
                                    (primed_model(mp + 1), f"R'_{mp}")))
        tname, tdata = _grass_target((fl_r + 1) * r - d, n, fl_r, True)
        side = primed_model(fl_r + 1)
        if d % r:
            walls.append(WallRecord(mov_alpha, "fiber-type", tname, tdata, (side,)))
        else:
            walls.append(WallRecord(mov_alpha, "divisorial", tname, tdata, (side,),
                                    c1_Bm_prime(params, d // r - 1)))

    order = _ccw_sort([w.cls for w in walls], mov.ray1)
    rank_of = {c: i for i, c in enumerate(order)}
    walls.sort(key=lambda w: rank_of[w.cls])

    K = canonical_class(params)
    log_fano = cone_contains(mov, -K) and cone_contains(eff, -K, strict=True)
    return MMPReport(params, False, chambers, mov, eff, walls, K, log_fano)


def exceptional_dimensions(params: ModuliParams, m: int) -> tuple[int, int]:
    """Dimensions of the exceptional loci of pr_1 : R_{m+1} -> G_m and pr_2 : R_m -> G_m.

    Valid for ceil(d/s) <= m <= d-1; at m = d/s (when integral) the pr_1
    locus is a divisor.
    """
    n, r, d, s = params.n, params.r, params.d, params.s
    if r > n - 2 or d < 1:
        raise ValueError("exceptional loci are only defined in the Picard rank 2 case")
    if not params.ceil_ds <= m <= d - 1:
        raise ValueError(f"m = {m} outside [{params.ceil_ds}, {d - 1}]")
    dim_R = params.dim_R
    return dim_R - (s * m - d + 1), dim_R - (m + 2) * r - d - 1
