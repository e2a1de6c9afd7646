"""Throughput of the jit-compiled kernels versus the pure-numpy fallback.

Times ``rank`` and ``matmul`` on random code matrices over a few fields.
Both implementations are always importable (the EQUIDEFORM_NO_NUMBA flag
only changes which one the library dispatches to), so this script compares
them directly and verifies they agree on every sampled input.

Usage: python3 bench/bench_kernels.py [--sizes 64,128,256] [--reps 5]
"""

import argparse
import time

import numpy as np

from equideform import kernels
from equideform.gf import make_field


def _time(func, reps=5):
    """Best wall time over ``reps`` calls of a zero-argument callable."""
    best = float("inf")
    for _ in range(reps):
        start = time.perf_counter()
        out = func()
        best = min(best, time.perf_counter() - start)
    return best, out


def bench_field(field, sizes, reps, rng):
    add, mul, neg, inv = field.tables()
    print("\n%r" % field)
    header = "%8s  %12s  %12s  %12s  %8s" % (
        "size", "op", "numpy (ms)", "numba (ms)", "speedup",
    )
    print(header)
    print("-" * len(header))
    for n in sizes:
        a = rng.integers(0, field.q, size=(n, n)).astype(np.int64)
        b = rng.integers(0, field.q, size=(n, n)).astype(np.int64)

        # rank reduces its argument in place, so each rep gets a fresh copy
        t_py, r_py = _time(
            lambda: kernels.rank_py(a.copy(), add, mul, neg, inv), reps=reps
        )
        if kernels.HAS_NUMBA:
            t_jit, r_jit = _time(
                lambda: kernels.rank_jit(a.copy(), add, mul, neg, inv), reps=reps
            )
            assert r_py == int(r_jit), "rank mismatch at n=%d" % n
            ratio = "%.1fx" % (t_py / t_jit)
            jit_ms = "%.3f" % (t_jit * 1e3)
        else:
            ratio, jit_ms = "-", "n/a"
        print("%8d  %12s  %12.3f  %12s  %8s" % (n, "rank", t_py * 1e3, jit_ms, ratio))

        t_py, m_py = _time(lambda: kernels.matmul_py(a, b, add, mul), reps=reps)
        if kernels.HAS_NUMBA:
            t_jit, m_jit = _time(
                lambda: kernels.matmul_jit(a, b, add, mul), reps=reps
            )
            assert np.array_equal(m_py, m_jit), "matmul mismatch at n=%d" % n
            ratio = "%.1fx" % (t_py / t_jit)
            jit_ms = "%.3f" % (t_jit * 1e3)
        else:
            ratio, jit_ms = "-", "n/a"
        print("%8d  %12s  %12.3f  %12s  %8s" % (n, "matmul", t_py * 1e3, jit_ms, ratio))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="64,128,256",
                        help="comma list of matrix sizes")
    parser.add_argument("--reps", type=int, default=5,
                        help="repetitions per timing (best is reported)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    rng = np.random.default_rng(args.seed)

    if kernels.HAS_NUMBA:
        # trigger compilation outside the timed region
        f = make_field(2)
        add, mul, neg, inv = f.tables()
        warm = rng.integers(0, 2, size=(4, 4)).astype(np.int64)
        kernels.rank_jit(warm.copy(), add, mul, neg, inv)
        kernels.matmul_jit(warm, warm, add, mul)
    else:
        print("numba is not importable; timing the numpy path only")

    for p, m in [(2, 1), (5, 1), (2, 3)]:
        bench_field(make_field(p, m), sizes, args.reps, rng)


if __name__ == "__main__":
    main()
