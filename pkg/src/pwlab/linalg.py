"""Exact linear algebra over the rationals.

Matrices are numpy object arrays holding ``int``/``Fraction`` entries.  The
reference route is fraction Gaussian elimination.  For larger inputs the
kernel is first computed modulo a few primes (see ``_kernels``), lifted by
rational reconstruction and then checked exactly; a lifted basis that passes
``A @ K == 0`` is provably the exact reduced kernel basis, because a kernel
can only grow under reduction mod p.  Anything that fails the check falls
back to the fraction route.
"""
from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np

from . import _kernels

# below this many entries the fraction route is faster than the modular one
MODULAR_THRESHOLD = 400
MAX_PRIMES = 6


class InconsistentSystem(ValueError):
    """Raised by :func:`solve` when ``A x = b`` has no solution."""

    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or f"inconsistent linear system (rhs column {column})")


def qmat(rows):
    """Object array of Fractions from nested sequences (or an array)."""
    A = np.array(rows, dtype=object)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    out = np.empty(A.shape, dtype=object)
    for idx, x in np.ndenumerate(A):
        out[idx] = Fraction(x)
    return out


def qvec(xs):
    out = np.empty(len(xs), dtype=object)
    for i, x in enumerate(xs):
        out[i] = Fraction(x)
    return out


def zeros(m, n=None):
    shape = (m,) if n is None else (m, n)
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero(A):
    return all(x == 0 for x in np.asarray(A, dtype=object).flat)


# -- fraction route ---------------------------------------------------------

def _rref_rows(rows, ncols):
    """In-place RREF of a list of Fraction lists; returns pivot columns."""
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        k = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        if piv != 1:
            prow = [x / piv for x in prow]
            rows[r] = prow
        support = [j for j in range(c, ncols) if prow[j] != 0]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == 0:
                continue
            for j in support:
                row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(A):
    """Exact reduced row echelon form: ``(R, pivots)``."""
    A = np.asarray(A, dtype=object)
    m, n = A.shape
    rows = [[Fraction(x) for x in A[i]] for i in range(m)]
    pivots = _rref_rows(rows, n)
    R = np.empty((m, n), dtype=object)
    for i in range(m):
        R[i, :] = rows[i]
    return R, pivots


def _kernel_from_rref(R, pivots, n):
    free = [j for j in range(n) if j not in set(pivots)]
    K = zeros(n, len(free))
    for k, f in enumerate(free):
        K[f, k] = Fraction(1)
        for i, p in enumerate(pivots):
            K[p, k] = -R[i, f]
    return K


def nullspace_fraction(A):
    A = np.asarray(A, dtype=object)
    n = A.shape[1]
    if A.shape[0] == 0:
        return identity(n)
    R, pivots = rref(A)
    return _kernel_from_rref(R, pivots, n)


# -- modular route ----------------------------------------------------------

def _integer_rows(A):
    """Scale each row to integers (kernel unchanged)."""
    out = []
    for row in A:
        row = [Fraction(x) for x in row]
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        out.append([int(x * d) for x in row])
    return out


def rational_reconstruct(a, m):
    """Return ``r/s`` with ``r = a s (mod m)`` and ``|r|, |s| <= sqrt(m/2)``."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(s1, m) != 1:
        return None
    return Fraction(r1, s1)


def _crt(r1, m1, r2, m2):
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return r1 + m1 * t, m1 * m2


def _verify_kernel(Aint, K):
    # K columns are Fraction vectors; clear denominators per column
    for k in range(K.shape[1]):
        col = [Fraction(x) for x in K[:, k]]
        d = 1
        for x in col:
            d = lcm(d, x.denominator)
        ic = [int(x * d) for x in col]
        support = [j for j, x in enumerate(ic) if x]
        for row in Aint:
            if sum(row[j] * ic[j] for j in support) != 0:
                return False
    return True


def nullspace_modular(A):
    """Certified modular kernel; ``None`` if lifting did not succeed."""
    A = np.asarray(A, dtype=object)
    m, n = A.shape
    Aint = _integer_rows(A)
    pivots = None
    residues = None
    modulus = 1
    for p in _kernels.PRIMES[:MAX_PRIMES]:
        Ap = np.array([[x % p for x in row] for row in Aint], dtype=np.int64).reshape(m, n)
        R, piv = _kernels.rref_mod_p(Ap, p)
        piv = [int(c) for c in piv]
        if pivots is None or len(piv) > len(pivots):
            pivots, residues, modulus = piv, None, 1
        elif piv != pivots:
            continue
        free = [j for j in range(n) if j not in set(pivots)]
        cur = {}
        for k, f in enumerate(free):
            for i, pc in enumerate(pivots):
                cur[pc, k] = int(-R[i, f]) % p
        if residues is None:
            residues = cur
        else:
            residues = {key: _crt(residues[key], modulus, cur[key], p)[0] for key in cur}
        modulus *= p
        K = zeros(n, len(free))
        ok = True
        for k, f in enumerate(free):
            K[f, k] = Fraction(1)
        for key, val in residues.items():
            q = rational_reconstruct(val, modulus)
            if q is None:
                ok = False
                break
            K[key] = q
        if ok and _verify_kernel(Aint, K):
            return K
    return None


# -- public API -------------------------------------------------------------

def nullspace(A, method="auto"):
    """Exact kernel basis as columns, in reduced (canonical) form."""
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        raise ValueError("nullspace expects a 2-d array")
    m, n = A.shape
    if n == 0:
        return zeros(0, 0)
    if m == 0:
        return identity(n)
    if method == "fraction":
        return nullspace_fraction(A)
    if method == "modular" or (method == "auto" and m * n >= MODULAR_THRESHOLD):
        K = nullspace_modular(A)
        if K is not None:
            return K
        if method == "modular":
            raise ArithmeticError("modular kernel could not be certified")
    return nullspace_fraction(A)


def rank(A, method="auto"):
    A = np.asarray(A, dtype=object)
    if A.size == 0:
        return 0
    if A.shape[1] > A.shape[0]:
        A = A.T
    return A.shape[1] - nullspace(A, method).shape[1]


def solve(A, B):
    """Canonical solution ``X`` of ``A X = B`` (free variables set to zero).

    ``B`` may be a vector or a matrix of right-hand sides.  Raises
    :class:`InconsistentSystem` naming the first unsolvable column.
    """
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    vec = B.ndim == 1
    if vec:
        B = B.reshape(-1, 1)
    m, n = A.shape
    r = B.shape[1]
    if m == 0:
        return zeros(n) if vec else zeros(n, r)
    rows = [[Fraction(x) for x in A[i]] + [Fraction(x) for x in B[i]] for i in range(m)]
    # eliminate on the A-part only, carrying the right-hand sides along
    pivots = []
    rr = 0
    for c in range(n):
        if rr == m:
            break
        k = next((i for i in range(rr, m) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[rr], rows[k] = rows[k], rows[rr]
        piv = rows[rr][c]
        prow = [x / piv for x in rows[rr]] if piv != 1 else rows[rr]
        rows[rr] = prow
        support = [j for j in range(c, n + r) if prow[j] != 0]
        for i in range(m):
            if i != rr and rows[i][c] != 0:
                f = rows[i][c]
                row = rows[i]
                for j in support:
                    row[j] -= f * prow[j]
        pivots.append(c)
        rr += 1
    for i in range(rr, m):
        for j in range(r):
            if rows[i][n + j] != 0:
                raise InconsistentSystem(j)
    X = zeros(n, r)
    for i, c in enumerate(pivots):
        for j in range(r):
            X[c, j] = rows[i][n + j]
    return X[:, 0] if vec else X


def column_space_basis(A):
    """Indices of the first linearly independent columns (greedy)."""
    A = np.asarray(A, dtype=object)
    if A.size == 0:
        return []
    _, pivots = rref(A)
    return pivots


def in_span(A, v):
    """Whether ``v`` lies in the column span of ``A``."""
    try:
        solve(A, v)
    except InconsistentSystem:
        return False
    return True


def same_span(A, B):
    """Whether the column spans of ``A`` and ``B`` coincide."""
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    ra, rb = rank(A), rank(B)
    if ra != rb:
        return False
    return rank(np.hstack([A, B])) == ra


def matmul(A, B):
    """Product of object matrices, skipping the zero entries of ``A``."""
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    vec = B.ndim == 1
    if vec:
        B = B.reshape(-1, 1)
    out = zeros(A.shape[0], B.shape[1])
    for i in range(A.shape[0]):
        row = A[i]
        acc = None
        for k in range(A.shape[1]):
            a = row[k]
            if a != 0:
                t = a * B[k]
                acc = t if acc is None else acc + t
        if acc is not None:
            out[i] = acc
    return out[:, 0] if vec else out


def commutator(A, B):
    return matmul(A, B) - matmul(B, A)


def vecmat(v, A):
    """Row vector times matrix."""
    return matmul(np.asarray(v, dtype=object).reshape(1, -1), A)[0]
