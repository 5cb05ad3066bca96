"""Independent oracles for derived values.

Nothing here calls into the library's linear algebra: ranks and subspace
canonical forms are recomputed with plain integer arithmetic mod q.
"""
from __future__ import annotations

from itertools import product


def rref_mod(rows, q):
    """Canonical RREF of a list of integer rows over F_q, zero rows dropped."""
    A = [[x % q for x in r] for r in rows]
    if not A:
        return ()
    R, C = len(A), len(A[0])
    rk = 0
    for c in range(C):
        piv = next((i for i in range(rk, R) if A[i][c]), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        inv = pow(A[rk][c], -1, q)
        A[rk] = [(x * inv) % q for x in A[rk]]
        for i in range(R):
            if i != rk and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % q for x, y in zip(A[i], A[rk])]
        rk += 1
        if rk == R:
            break
    return tuple(tuple(r) for r in A[:rk])


def rank_mod(rows, q):
    return len(rref_mod(rows, q))


def count_subspaces_bruteforce(k, N, q):
    """Number of k-dim subspaces of F_q^N by listing all spanning k-tuples."""
    seen = set()
    vecs = list(product(range(q), repeat=N))
    if k == 0:
        return 1
    for tup in product(vecs, repeat=k):
        if rank_mod(tup, q) == k:
            seen.add(rref_mod(tup, q))
    return len(seen)


def _proj_points(q):
    return [(1, b) for b in range(q)] + [(0, 1)]


def torsion_quotient_pairs(q, n=2):
    """Points of R_1 for r = 0, d = 1 from length-one torsion quotients.

    A quotient V (x) O -> k_p is a point p of P^1 and a nonzero functional
    phi on V up to scale; the kernel's sections in degree m are
    {sigma in V_m : phi(sigma(p)) = 0}.  Returns the set of pairs
    (K_0, K_1) of canonical RREF bases in the V_m coordinates
    e_i (x) x^(m-j) y^j -> i*(m+1)+j.
    """
    pairs = set()
    phis = [v for v in product(range(q), repeat=n) if any(v)]
    phis = {rref_mod([v], q) for v in phis}
    for (a, b) in _proj_points(q):
        for phi_rows in phis:
            phi = phi_rows[0]
            ks = []
            for m in (0, 1):
                # sigma(p) = sum_i e_i sum_j c_ij a^(m-j) b^j; one linear equation in c
                eq = [0] * (n * (m + 1))
                for i in range(n):
                    for j in range(m + 1):
                        eq[i * (m + 1) + j] = phi[i] * pow(a, m - j, q) * pow(b, j, q) % q
                ks.append(kernel_mod(eq, q))
            pairs.add((ks[0], ks[1]))
    return pairs


def kernel_mod(eq, q):
    """RREF basis of {c : eq . c = 0} for a single nonzero equation."""
    N = len(eq)
    piv = next(i for i, x in enumerate(eq) if x % q)
    inv = pow(eq[piv], -1, q)
    basis = []
    for f in range(N):
        if f == piv:
            continue
        v = [0] * N
        v[f] = 1
        v[piv] = (-eq[f] * inv) % q
        basis.append(v)
    return rref_mod(basis, q)


def j_condition_holds(low, high, n, m, q):
    """j_m(low) inside high (x) H, with j_m(v (x) f) = v (x) xf (x) y - v (x) yf (x) x."""
    N = n * (m + 1)
    hh = []
    for r in high:
        for h in (0, 1):
            v = [0] * (2 * N)
            v[h::2] = r
            hh.append(v)
    base = rank_mod(hh, q)
    for r in low:
        img = [0] * (2 * N)
        for i in range(n):
            for j in range(m):
                c = r[i * m + j]
                if not c:
                    continue
                # v (x) x^(m-1-j) y^j times x, then (x) y; times y, then (x) x
                img[2 * (i * (m + 1) + j) + 1] += c
                img[2 * (i * (m + 1) + j + 1) + 0] -= c
        if rank_mod(hh + [img], q) != base:
            return False
    return True


def exceptional_dims_from_strata(n, r, d, m):
    """Max over nonempty strata i >= 1 of stratum dimension plus fiber dimension.

    pr_2 : R_m -> G_m has fibers Gr(ms-d+i, ms-d) of dimension i(ms-d);
    pr_1 : R_{m+1} -> G_m has fibers of dimension i((m+2)r+d).
    """
    s = n - r
    top = d // (m + 1)
    strata = [(i, n * (d - (m + 1) * i) + (r + i) * (s - i)) for i in range(1, top + 1)]
    pr1 = max(dim + i * ((m + 2) * r + d) for i, dim in strata)
    pr2 = max(dim + i * (m * s - d) for i, dim in strata)
    return pr1, pr2
