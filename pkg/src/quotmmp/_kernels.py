"""Batched rank mod p: numba kernel with a pure-numpy fallback.

Set ``QUOTMMP_NUMBA=0`` to force the numpy path (it is also used when numba
is not importable).  Both paths take an int64 array of shape (B, R, C) with
entries in [0, p) and return the B ranks.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


def _env_wants_numba() -> bool:
    return os.environ.get("QUOTMMP_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


USE_NUMBA = _HAVE_NUMBA and _env_wants_numba()

MAX_KERNEL_PRIME = 1 << 20


def inverse_table(p: int) -> np.ndarray:
    if p > MAX_KERNEL_PRIME:
        raise ValueError(f"kernel primes are limited to {MAX_KERNEL_PRIME}")
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


@njit(cache=True, nogil=True)
def _rank_batch_jit(mats, p, inv):
    B, R, C = mats.shape
    out = np.zeros(B, dtype=np.int64)
    A = np.empty((R, C), dtype=np.int64)
    for b in range(B):
        for i in range(R):
            for j in range(C):
                A[i, j] = mats[b, i, j]
        rk = 0
        for c in range(C):
            if rk == R:
                break
            piv = -1
            for i in range(rk, R):
                if A[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rk:
                for j in range(c, C):
                    t = A[rk, j]
                    A[rk, j] = A[piv, j]
                    A[piv, j] = t
            s = inv[A[rk, c]]
            for j in range(c, C):
                A[rk, j] = (A[rk, j] * s) % p
            for i in range(rk + 1, R):
                f = A[i, c]
                if f != 0:
                    for j in range(c, C):
                        A[i, j] = (A[i, j] - f * A[rk, j]) % p
            rk += 1
        out[b] = rk
    return out


def _rank_batch_numpy(mats, p, inv):
    A = np.array(mats, dtype=np.int64, copy=True) % p
    B, R, C = A.shape
    rank = np.zeros(B, dtype=np.int64)
    rows = np.arange(R)
    for c in range(C):
        cand = (A[:, :, c] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        pr = rank[b]
        pv = np.argmax(cand[b], axis=1)
        top = A[b, pr].copy()
        A[b, pr] = A[b, pv]
        A[b, pv] = top
        A[b, pr] = (A[b, pr] * inv[A[b, pr, c]][:, None]) % p
        f = A[b, :, c].copy()
        f[rows[None, :] <= pr[:, None]] = 0
        A[b] = (A[b] - f[:, :, None] * A[b, pr][:, None, :]) % p
        rank[b] += 1
    return rank


def rank_mod_p_batch(mats: np.ndarray, p: int, backend: str | None = None) -> np.ndarray:
    """Ranks over F_p of a stack of matrices."""
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    if mats.ndim != 3:
        raise ValueError("expected a (B, R, C) array")
    if mats.shape[0] == 0 or mats.shape[1] == 0 or mats.shape[2] == 0:
        return np.zeros(mats.shape[0], dtype=np.int64)
    inv = inverse_table(p)
    if backend is None:
        backend = "numba" if USE_NUMBA else "numpy"
    if backend == "numba":
        if not _HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not installed")
        return _rank_batch_jit(mats % p, np.int64(p), inv)
    if backend == "numpy":
        return _rank_batch_numpy(mats, p, inv)
    raise ValueError(f"unknown backend {backend!r}")


def active_backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
