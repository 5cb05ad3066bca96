"""Brute-force census of G_m(F_q) and R_m(F_q) at tiny parameters.

Every subspace is visited in canonical RREF, grouped by pivot pattern; the
rank computations for one pattern run as a single batched kernel call.
"""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import numpy as np

from ._kernels import rank_mod_p_batch
from .exactcore import FieldSpec, gaussian_binomial
from .p1forms import ModuliParams, jm_matrix, km_matrix
from .quotmodel import max_stratum_index, pr1_threshold

DEFAULT_CAP = 10 ** 7
_BATCH_CHUNK = 1 << 15


class CapExceededError(RuntimeError):
    def __init__(self, what: str, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"{what}: {count} subspaces exceeds the enumeration cap {cap}")


def default_cap() -> int:
    env = os.environ.get("QUOTMMP_CAP")
    return int(env) if env else DEFAULT_CAP


def _check_q(q: int):
    if q not in (2, 3, 5, 7):
        raise ValueError(f"q must be a prime <= 7, got {q}")


def _check_cap(k: int, N: int, q: int, cap: int | None, what: str) -> int:
    cap = default_cap() if cap is None else cap
    count = gaussian_binomial(k, N, q)
    if count > cap:
        raise CapExceededError(what, count, cap)
    return count


def pivot_patterns(k: int, N: int):
    return list(combinations(range(N), k))


def _free_positions(pivots: tuple[int, ...], N: int) -> list[tuple[int, int]]:
    pset = set(pivots)
    return [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, N) if c not in pset]


def pattern_size(pivots: tuple[int, ...], N: int, q: int) -> int:
    return q ** len(_free_positions(pivots, N))


def subspace_batch(pivots: tuple[int, ...], N: int, q: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """RREF matrices with the given pivot columns, shape (stop - start, k, N).

    The full pattern has q^f members (f free entries); ``start``/``stop``
    select a slice of them in enumeration order.
    """
    k = len(pivots)
    free = _free_positions(pivots, N)
    f = len(free)
    total = q ** f
    stop = total if stop is None else min(stop, total)
    out = np.zeros((max(stop - start, 0), k, N), dtype=np.int64)
    for i, pc in enumerate(pivots):
        out[:, i, pc] = 1
    idx = np.arange(start, stop, dtype=np.int64)
    for t, (i, c) in enumerate(free):
        out[:, i, c] = (idx // q ** (f - 1 - t)) % q
    return out


def _chunks(N: int, q: int, k: int, chunk: int = _BATCH_CHUNK):
    """(pivots, start, stop) work items covering Gr(k, F_q^N) in order."""
    for pv in pivot_patterns(k, N):
        size = pattern_size(pv, N, q)
        for a in range(0, size, chunk):
            yield pv, a, min(a + chunk, size)


def enumerate_subspaces(k: int, N: int, q: int, cap: int | None = None) -> Iterator[np.ndarray]:
    """Each k-dim subspace of F_q^N once, as a k x N RREF int64 array.

    Order: pivot patterns lexicographically, then free entries with the
    last free position varying fastest.
    """
    _check_q(q)
    if not 0 <= k <= N:
        raise ValueError(f"need 0 <= k <= N, got ({k}, {N})")
    _check_cap(k, N, q, cap, f"Gr({k}, F_{q}^{N})")
    for pv, a, b in _chunks(N, q, k):
        yield from subspace_batch(pv, N, q, a, b)


def _to_np(mat, q: int) -> np.ndarray:
    return np.array([[int(x) for x in row] for row in mat.tolist()], dtype=np.int64).reshape(mat.rows, mat.cols) % q


def _tensor_H_batch(K: np.ndarray) -> np.ndarray:
    B, k, N = K.shape
    out = np.zeros((B, 2 * k, 2 * N), dtype=np.int64)
    out[:, 0::2, 0::2] = K
    out[:, 1::2, 1::2] = K
    return out


@dataclass
class _LevelMaps:
    params: ModuliParams
    m: int
    q: int
    jT: np.ndarray | None  # rows j_m(basis of V_{m-1}), shape (nm, 2N)
    kx: np.ndarray  # V_m -> V_{m+1} for x^dual, shape (n(m+2), N)
    ky: np.ndarray

    @classmethod
    def build(cls, p: ModuliParams, m: int, q: int) -> "_LevelMaps":
        F = FieldSpec.prime(q)
        jT = _to_np(jm_matrix(p, m, F).transpose(), q) if m >= 1 else None
        Km = _to_np(km_matrix(p, m + 1, F), q)
        return cls(p, m, q, jT, Km[:, 0::2].copy(), Km[:, 1::2].copy())

    def pr2_ranks(self, K: np.ndarray) -> np.ndarray:
        B, k, N = K.shape
        KH = _tensor_H_batch(K)
        J = np.broadcast_to(self.jT, (B,) + self.jT.shape)
        return rank_mod_p_batch(np.concatenate([KH, J], axis=1), self.q) - 2 * k

    def pr1_ranks(self, K: np.ndarray) -> np.ndarray:
        if K.shape[1] == 0:
            return np.zeros(K.shape[0], dtype=np.int64)
        imgs = np.concatenate([K @ self.kx.T, K @ self.ky.T], axis=1) % self.q
        return rank_mod_p_batch(imgs, self.q)


@dataclass
class CensusResult:
    params: ModuliParams
    m: int
    q: int
    total: int
    counts: dict[int, int]
    pr1_counts: dict[int, int]
    disagreements: int
    max_index_allowed: int
    rm_point_count_stratified: int | None
    rm_point_count_direct: int | None = None
    pr2_fiber_counts: dict[int, int] = field(default_factory=dict)

    @property
    def max_index_observed(self) -> int:
        return max(self.counts) if self.counts else 0

    @property
    def emptiness_holds(self) -> bool:
        return all(i <= self.max_index_allowed for i, c in self.counts.items() if c)

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "r": self.params.r, "d": self.params.d},
            "m": self.m, "q": self.q, "total": self.total,
            "counts": {str(i): c for i, c in sorted(self.counts.items())},
            "pr1_counts": {str(i): c for i, c in sorted(self.pr1_counts.items())},
            "disagreements": self.disagreements,
            "max_index_allowed": self.max_index_allowed,
            "max_index_observed": self.max_index_observed,
            "pr2_fiber_counts": {str(i): c for i, c in sorted(self.pr2_fiber_counts.items())},
            "rm_point_count_stratified": self.rm_point_count_stratified,
            "rm_point_count_direct": self.rm_point_count_direct,
        }

    def to_csv(self) -> str:
        lines = ["index,pr2_count,pr1_count"]
        for i in sorted(set(self.counts) | set(self.pr1_counts)):
            lines.append(f"{i},{self.counts.get(i, 0)},{self.pr1_counts.get(i, 0)}")
        return "\n".join(lines) + "\n"


def _map_batches(fn, patterns, threads: int):
    if threads <= 1:
        return [fn(pv) for pv in patterns]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, patterns))


def _classify(params: ModuliParams, m: int, q: int, cap, threads):
    p = params
    k, N = p.grass_rank(m), p.dim_V(m)
    total = _check_cap(k, N, q, cap, f"G_{m}(F_{q})")
    maps = _LevelMaps.build(p, m, q)
    has_pr2 = m >= max(1, p.ceil_ds)
    thr1 = pr1_threshold(p, m)

    def work(item):
        K = subspace_batch(item[0], N, q, item[1], item[2])
        c2, c1, bad = Counter(), Counter(), 0
        rho1 = maps.pr1_ranks(K)
        i1 = thr1 - rho1
        c1.update(i1.tolist())
        r1 = Counter(rho1.tolist())
        if has_pr2:
            i2 = m * p.r + p.d - maps.pr2_ranks(K)
            c2.update(i2.tolist())
            bad = int((((i1 >= 0) | (i2 >= 0)) & (i1 != i2)).sum())
        return c2, c1, bad, r1

    c2, c1, r1, bad = Counter(), Counter(), Counter(), 0
    for a, b, x, rr in _map_batches(work, _chunks(N, q, k), threads):
        c2 += a
        c1 += b
        r1 += rr
        bad += x
    return total, maps, has_pr2, dict(c2), dict(c1), bad, dict(r1)


def count_rm_direct(params: ModuliParams, m: int, q: int, cap: int | None = None) -> int:
    """Number of pairs (K_{m-1}, K_m) in G_{m-1} x G_m with j_m(K_{m-1}) in K_m (x) H."""
    p = params
    cap = default_cap() if cap is None else cap
    kh, Nh = p.grass_rank(m), p.dim_V(m)
    kl, Nl = p.grass_rank(m - 1), p.dim_V(m - 1)
    nh = _check_cap(kh, Nh, q, cap, f"G_{m}(F_{q})")
    nl = _check_cap(kl, Nl, q, cap, f"G_{m - 1}(F_{q})")
    if nh * nl > cap * 16:
        raise CapExceededError(f"G_{m - 1} x G_{m} pairs", nh * nl, cap * 16)
    if kl == 0:
        return nh
    maps = _LevelMaps.build(p, m, q)
    lows = np.concatenate([subspace_batch(pv, Nl, q) for pv in pivot_patterns(kl, Nl)])
    jl = (lows @ maps.jT) % q  # (BL, kl, 2Nh)
    count = 0
    per = max(1, _BATCH_CHUNK // len(jl))
    for pv, a, b in _chunks(Nh, q, kh, per):
        H = _tensor_H_batch(subspace_batch(pv, Nh, q, a, b))
        BH, BL = len(H), len(jl)
        mats = np.concatenate([np.repeat(H, BL, axis=0), np.tile(jl, (BH, 1, 1))], axis=1)
        count += int((rank_mod_p_batch(mats, q) == 2 * kh).sum())
    return count


def census(params: ModuliParams, m: int, q: int, direct: bool = False,
           cap: int | None = None, threads: int = 1) -> CensusResult:
    """Classify every point of G_m(F_q) by stratum index and count R_m(F_q).

    ``counts`` is keyed by the pr_2 index (pr_1 index at the bottom level
    m = ceil(d/s) - 1, where R_m does not exist and no R_m count is made).
    """
    _check_q(q)
    p = params
    if p.d < 1:
        raise ValueError("census needs d >= 1")
    if m < p.ceil_ds - 1:
        raise ValueError(f"G_m needs m >= ceil(d/s) - 1 = {p.ceil_ds - 1}")
    total, maps, has_pr2, c2, c1, bad, _ = _classify(p, m, q, cap, threads)
    counts = c2 if has_pr2 else c1
    strat = None
    fibers = {}
    if has_pr2:
        base = m * p.s - p.d
        strat = 0
        for i, c in counts.items():
            if i >= 0:
                fibers[i] = gaussian_binomial(base, base + i, q)
                strat += c * fibers[i]
    res = CensusResult(p, m, q, total, counts, c1, bad, max_stratum_index(p, m), strat, None, fibers)
    if direct:
        if not has_pr2:
            raise ValueError("no R_m at the bottom level; nothing to count directly")
        res.rm_point_count_direct = count_rm_direct(p, m, q, cap)
    return res


@dataclass
class Pr1CrossCheck:
    params: ModuliParams
    m: int
    q: int
    pr1_stratified: int
    pr2_stratified: int | None
    fiber_counts: dict[int, int]
    all_fibers_nontrivial: bool | None
    direct: int | None = None

    @property
    def consistent(self) -> bool:
        ok = self.pr2_stratified is None or self.pr2_stratified == self.pr1_stratified
        if self.direct is not None:
            ok = ok and self.direct == self.pr1_stratified
        return ok and self.all_fibers_nontrivial is not False

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "r": self.params.r, "d": self.params.d},
            "m": self.m, "q": self.q,
            "rm1_count_pr1_stratified": self.pr1_stratified,
            "rm1_count_pr2_stratified": self.pr2_stratified,
            "rm1_count_direct": self.direct,
            "pr1_fiber_counts": {str(i): c for i, c in sorted(self.fiber_counts.items())},
            "all_fibers_nontrivial": self.all_fibers_nontrivial,
            "consistent": self.consistent,
        }


def cross_check_pr1(params: ModuliParams, m: int, q: int, cap: int | None = None,
                    direct: bool = False, threads: int = 1) -> Pr1CrossCheck:
    """|R_{m+1}(F_q)| via pr_1 fibers over G_m, compared with the pr_2 count at level m+1."""
    _check_q(q)
    p = params
    if m < p.ceil_ds - 1:
        raise ValueError(f"pr_1 needs m >= ceil(d/s) - 1 = {p.ceil_ds - 1}")
    _, _, _, _, c1, _, r1 = _classify(p, m, q, cap, threads)
    target = p.grass_rank(m + 1)
    amb = p.dim_V(m + 1)
    total = 0
    fibers: dict[int, int] = {}
    nontrivial = True
    thr = pr1_threshold(p, m)
    for rho, c in r1.items():
        sub = target - rho
        cnt = gaussian_binomial(sub, amb - rho, q) if sub >= 0 else 0
        if cnt:
            fibers[thr - rho] = cnt
        total += c * cnt
        nontrivial = nontrivial and cnt > 1
    bottom = m == p.ceil_ds - 1
    try:
        other = census(p, m + 1, q, cap=cap, threads=threads).rm_point_count_stratified
    except CapExceededError:
        other = None
    res = Pr1CrossCheck(p, m, q, total, other, fibers, nontrivial if bottom else None)
    if direct:
        res.direct = count_rm_direct(p, m + 1, q, cap)
    return res
