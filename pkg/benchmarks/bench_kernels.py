"""Compare the numba and numpy modular row-reduction kernels.

    python benchmarks/bench_kernels.py [--sizes 50,100,200] [--repeat 3]

Also times the exact Fraction elimination on the same matrices for scale.
The numba timing excludes the first (compiling) call.
"""
import argparse
import time

import numpy as np

from pwlab import _kernels, linalg as la


def random_int_matrix(rng, m, n, rank):
    A = rng.integers(-5, 6, size=(m, rank)) @ rng.integers(-5, 6, size=(rank, n))
    return A.astype(np.int64)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="50,100,200")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--fraction-max", type=int, default=100, help="skip Fraction route above this size")
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    p = _kernels.PRIMES[0]
    have_nb = _kernels.HAVE_NUMBA
    if have_nb:
        _kernels.rref_mod_p_numba(np.eye(3, dtype=np.int64), p)
    print(f"{'size':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8} {'fraction s':>11}")
    for n in (int(s) for s in args.sizes.split(",")):
        A = random_int_matrix(rng, n, n + 10, max(1, n - 5)) % p
        t_np = best_of(lambda: _kernels.rref_mod_p_numpy(A, p), args.repeat)
        if have_nb:
            t_nb = best_of(lambda: _kernels.rref_mod_p_numba(A, p), args.repeat)
            R1, p1 = _kernels.rref_mod_p_numpy(A, p)
            R2, p2 = _kernels.rref_mod_p_numba(A, p)
            assert np.array_equal(R1, R2) and np.array_equal(p1, p2)
            nb, sp = f"{t_nb:10.4f}", f"{t_np / t_nb:8.1f}"
        else:
            nb, sp = f"{'n/a':>10}", f"{'n/a':>8}"
        if n <= args.fraction_max:
            Q = la.qmat(random_int_matrix(rng, n, n + 10, max(1, n - 5)).tolist())
            fr = f"{best_of(lambda: la.nullspace(Q, method='fraction'), 1):11.4f}"
        else:
            fr = f"{'skipped':>11}"
        print(f"{n:>6} {t_np:10.4f} {nb} {sp} {fr}")


if __name__ == "__main__":
    main()
