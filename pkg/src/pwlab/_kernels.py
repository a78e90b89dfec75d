"""Modular row-reduction kernels.

Two implementations of the same routine live here: a numba ``@njit`` one
and a pure-numpy one.  ``PWLAB_DISABLE_JIT=1`` (or a missing numba) selects
the numpy path.  Both return identical results; the test-suite and
``benchmarks/bench_kernels.py`` compare them.

Everything is int64 arithmetic modulo a prime below 2**31, so products fit
without overflow.
"""
import os

import numpy as np

PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
)

JIT_DISABLED = os.environ.get("PWLAB_DISABLE_JIT", "").strip() not in ("", "0")

try:
    if JIT_DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False


def _inv_mod_py(a, p):
    return pow(int(a), p - 2, p)


def rref_mod_p_numpy(A, p):
    """Reduced row echelon form of ``A`` over GF(p).

    Returns ``(R, pivots)`` with ``pivots`` an int64 array of pivot columns.
    """
    R = np.array(A, dtype=np.int64) % p
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * _inv_mod_py(R[r, c], p)) % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r]) % p) % p
        pivots.append(c)
        r += 1
    return R, np.array(pivots, dtype=np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod_nb(a, p):
        # extended Euclid; a in [1, p)
        t, newt = 0, 1
        r, newr = p, a
        while newr != 0:
            q = r // newr
            t, newt = newt, t - q * newt
            r, newr = newr, r - q * newr
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_mod_p_nb(A, p):
        m, n = A.shape
        R = A.copy()
        for i in range(m):
            for j in range(n):
                R[i, j] %= p
                if R[i, j] < 0:
                    R[i, j] += p
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            k = -1
            for i in range(r, m):
                if R[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(n):
                    tmp = R[r, j]
                    R[r, j] = R[k, j]
                    R[k, j] = tmp
            inv = _inv_mod_nb(R[r, c], p)
            for j in range(c, n):
                R[r, j] = (R[r, j] * inv) % p
            for i in range(m):
                if i == r:
                    continue
                f = R[i, c]
                if f == 0:
                    continue
                for j in range(c, n):
                    R[i, j] = (R[i, j] - f * R[r, j]) % p
            pivots[r] = c
            r += 1
        return R, pivots[:r].copy()

    def rref_mod_p_numba(A, p):
        return _rref_mod_p_nb(np.ascontiguousarray(A, dtype=np.int64), np.int64(p))

    rref_mod_p = rref_mod_p_numba
else:
    rref_mod_p_numba = None
    rref_mod_p = rref_mod_p_numpy


def backend():
    return "numba" if rref_mod_p is not rref_mod_p_numpy else "numpy"
