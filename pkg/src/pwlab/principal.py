"""Principal nilpotents, their centralizers and regular elements x = s + n."""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg as la
from .rootdata import EXPONENTS

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19)


@dataclass
class PrincipalData:
    """e_I, h_I and a height-graded basis of the centralizer of e_I in n_I.

    With ``I`` the full index set this is the principal nilpotent e, the
    element h with alpha_i(h) = 2 and a basis of g^e.
    """

    g: object
    I: tuple
    e: np.ndarray
    h: np.ndarray
    h_coeffs: tuple
    basis: list
    degrees: tuple

    @property
    def dim(self):
        return len(self.basis)

    def matrices(self, V):
        return [V.matrix(x) for x in self.basis]


def _levi_cartan_coeffs(g, I):
    """c with h_I = sum_{j in I} c_j h_j and alpha_i(h_I) = 2 for i in I."""
    if not I:
        return ()
    C = la.qmat([[g.rs.cartan[i][j] for j in I] for i in I])
    return tuple(la.solve(C, la.qvec([2] * len(I))))


def principal_data(g, I=None):
    rs = g.rs
    I = tuple(range(g.rank)) if I is None else tuple(sorted(set(I)))
    e = g.zero()
    for i in I:
        e = e + g.e(i)
    coeffs = _levi_cartan_coeffs(g, I)
    h = g.zero()
    for c, j in zip(coeffs, I):
        h[g.index_h(j)] = c
    ade = g.ad(e)
    sub = rs.subsystem_roots(I)
    basis, degrees = [], []
    for k in sorted({sum(r) for r in sub}):
        cols = [g.index_e(r) for r in sub if sum(r) == k]
        K = la.nullspace(ade[:, cols])
        for c in range(K.shape[1]):
            v = g.zero()
            for t, idx in enumerate(cols):
                v[idx] = K[t, c]
            basis.append(v)
            degrees.append(2 * k)
    return PrincipalData(g, I, e, h, coeffs, basis, tuple(degrees))


def centralizer_basis(g, x):
    """Exact basis (list of vectors) of ker ad(x)."""
    K = la.nullspace(g.ad(np.asarray(x, dtype=object)))
    return [K[:, c] for c in range(K.shape[1])]


def h_eigenvalues(V, pd):
    """Eigenvalue of h_I on each weight basis vector of V."""
    vals = []
    for w in V.weights:
        vals.append(sum(c * w[j] for c, j in zip(pd.h_coeffs, pd.I)))
    return vals


def h_truncation_bound(V, pd=None):
    """Largest eigenvalue M of h on V (principal h unless ``pd`` is given).

    Monomials in g^e of h-degree above M need not vanish on V; the
    eigenvalue spread (2M for a self-dual spectrum) is what bounds the
    nonzero ones, see :func:`h_spread`.
    """
    if pd is None:
        pd = principal_data(V.g)
    vals = h_eigenvalues(V, pd)
    M = max(vals)
    return int(M) if Fraction(M).denominator == 1 else M


def h_spread(V, pd):
    vals = h_eigenvalues(V, pd)
    s = max(vals) - min(vals)
    return int(s) if Fraction(s).denominator == 1 else s


def exponents(rs):
    return EXPONENTS[(rs.type_letter, rs.rank)]


@dataclass
class RegularElement:
    g: object
    I: tuple
    s_values: tuple
    s: np.ndarray
    n: np.ndarray
    x: np.ndarray
    levi_roots: tuple
    nilradical_roots: tuple
    center_basis: list
    a_part: PrincipalData
    checks: dict = field(default_factory=dict)

    @property
    def center_dim(self):
        return len(self.center_basis)

    @property
    def a_basis(self):
        return self.a_part.basis

    @property
    def torus_indices(self):
        """Simple indices j outside I; C is parametrised by s_j = alpha_j(t)."""
        return tuple(j for j in range(self.g.rank) if j not in self.I)


def default_s_params(rank, I):
    out, k = [], 0
    for i in range(rank):
        if i in I:
            out.append(0)
        else:
            out.append(SMALL_PRIMES[k])
            k += 1
    return tuple(out)


def normalize_s_params(rank, I, s_params):
    """Accept alpha-values for all simple roots or only for those outside I."""
    if s_params is None:
        return default_s_params(rank, I)
    vals = [Fraction(v) for v in s_params]
    outside = [j for j in range(rank) if j not in I]
    if len(vals) == rank:
        return tuple(vals)
    if len(vals) == len(outside):
        full = [Fraction(0)] * rank
        for j, v in zip(outside, vals):
            full[j] = v
        return tuple(full)
    raise ValueError(f"s_params needs {rank} or {len(outside)} values, got {len(vals)}")


def regular_element(g, I, s_params=None):
    rs = g.rs
    I = tuple(sorted(set(I)))
    vals = normalize_s_params(g.rank, I, s_params)
    for i in range(g.rank):
        if (vals[i] == 0) != (i in I):
            raise ValueError(f"alpha_{i + 1}(s) = {vals[i]} but must vanish exactly for i in I")
    sub = set(rs.subsystem_roots(I))
    for beta in rs.positive_roots:
        if beta in sub:
            continue
        if sum(c * v for c, v in zip(beta, vals)) == 0:
            raise ValueError(f"root {list(beta)} vanishes on s; centralizer of s is larger than the Levi")
    s = g.cartan_element(vals)
    n = g.zero()
    for i in I:
        n = n + g.e(i)
    x = s + n
    rows = [[rs.cartan[i][j] for j in range(g.rank)] for i in I]
    if rows:
        K = la.nullspace(la.qmat(rows))
        center = []
        for c in range(K.shape[1]):
            v = g.zero()
            for j in range(g.rank):
                v[g.index_h(j)] = K[j, c]
            center.append(v)
    else:
        center = [g.h(j) for j in range(g.rank)]
    a_part = principal_data(g, I)
    levi = tuple(sorted(sub, key=lambda r: (sum(r), r)))
    nil = tuple(r for r in rs.positive_roots if r not in sub)
    return RegularElement(g, I, vals, s, n, x, levi, nil, center, a_part)


def verify_regular_element(rx):
    """Invariant checks; returns a dict of named booleans."""
    g = rx.g
    out = {}
    out["s_commutes_n"] = la.is_zero(g.bracket(rx.s, rx.n))
    cs = centralizer_basis(g, rx.s)
    out["centralizer_s_is_levi"] = len(cs) == g.rank + 2 * len(rx.levi_roots)
    cx = centralizer_basis(g, rx.x)
    out["x_regular"] = len(cx) == g.rank
    parts = rx.center_basis + rx.a_basis
    if parts:
        A = np.column_stack(parts)
        B = np.column_stack(cx)
        out["centralizer_is_C_plus_A"] = la.same_span(A, B)
    else:
        out["centralizer_is_C_plus_A"] = not cx
    out["a_commutes_n"] = all(la.is_zero(g.bracket(a, rx.n)) for a in rx.a_basis)
    out["a_dim_is_I"] = len(rx.a_basis) == len(rx.I)
    rx.checks = out
    return out
