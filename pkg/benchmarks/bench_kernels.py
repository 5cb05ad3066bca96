"""Compare the numba and numpy backends of the batched rank-mod-p kernel.

Two workloads: random stacks of matrices of a few shapes, and a full census
of G_m(F_q).  The first numba call includes JIT compilation, reported
separately as warm-up.
"""
import argparse
import time

import numpy as np

from quotmmp import _kernels
from quotmmp.ffenum import census
from quotmmp.p1forms import ModuliParams


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_random(batch, shapes, q, repeat):
    rng = np.random.default_rng(0)
    print(f"random batches: B={batch}, q={q}, best of {repeat}")
    print(f"{'shape':>10} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for R, C in shapes:
        mats = rng.integers(0, q, size=(batch, R, C))
        t_np, r_np = best_of(lambda: _kernels.rank_mod_p_batch(mats, q, backend="numpy"), repeat)
        t_nb, r_nb = best_of(lambda: _kernels.rank_mod_p_batch(mats, q, backend="numba"), repeat)
        assert np.array_equal(r_np, r_nb), "backends disagree"
        print(f"{R:>4}x{C:<5} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x")


def bench_census(params, m, q, repeat):
    print(f"census n={params.n} r={params.r} d={params.d} m={m} q={q}, best of {repeat}")
    results = {}
    for flag in (False, True):
        _kernels.USE_NUMBA = flag
        name = "numba" if flag else "numpy"
        t, res = best_of(lambda: census(params, m, q), repeat)
        results[name] = res.to_dict()
        print(f"  {name:6s} {t:8.4f}s  ({res.total} subspaces)")
    assert results["numba"] == results["numpy"], "census results differ between backends"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=20000)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--census", default="4,2,2,1", help="n,r,d,m for the census workload")
    args = ap.parse_args()

    t0 = time.perf_counter()
    _kernels.rank_mod_p_batch(np.zeros((1, 2, 2), dtype=np.int64), 2, backend="numba")
    print(f"numba warm-up (JIT or cache load): {time.perf_counter() - t0:.3f}s")

    bench_random(args.batch, [(4, 8), (8, 16), (12, 24)], args.q, args.repeat)
    n, r, d, m = (int(x) for x in args.census.split(","))
    bench_census(ModuliParams(n, r, d), m, args.q if args.q in (2, 3, 5, 7) else 2, args.repeat)


if __name__ == "__main__":
    main()
