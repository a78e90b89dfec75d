"""Truncated enveloping algebras of abelian centralizers, annihilators, solvers.

Because g^e (and the unipotent part A of G^x) is abelian, its enveloping
algebra is a polynomial ring in a homogeneous basis x_1..x_m, and a
monomial x^a acts on a module V by the matrix product X^a.  A monomial
raises the h-eigenvalue by its degree, so on V it vanishes once its degree
exceeds the spread (max minus min) of h-eigenvalues; truncating there
loses nothing.

A matrix entry g -> phi(g u) restricted to G^x = C x A is a Laurent
polynomial: the torus C contributes s^alpha on the alpha-isotypic part and
A contributes sum_a t^a/a! phi X^a u.  Every solver below turns an identity
of such functions into the finite linear system over the monomials, and
every returned solution can be re-checked as a coefficient-exact identity of
those Laurent polynomials.
"""
from fractions import Fraction
from itertools import product
from math import factorial

import numpy as np

from . import linalg as la
from .chevrep import exp_series
from .polynomial import MultiPoly
from .principal import h_eigenvalues, principal_data


class CounterexampleError(RuntimeError):
    """A linear system that should be solvable was not."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _afact(a):
    out = 1
    for x in a:
        out *= factorial(x)
    return out


class CentralizerGroup:
    """Parameters of G^x = C x A for x = s + e_I.

    C is the center of the Levi L_I, written in coordinates s_j = alpha_j(c)
    for j outside I; A = exp(a_I) with a_I spanned by ``pd.basis``.  With I
    the full index set this is G^e and C is trivial.
    """

    def __init__(self, pd):
        self.pd = pd
        self.g = pd.g
        self.I = pd.I
        self.torus = tuple(j for j in range(self.g.rank) if j not in pd.I)
        self.generators = pd.basis
        self.degrees = pd.degrees
        self._series = {}

    @classmethod
    def principal(cls, g):
        return cls(principal_data(g))

    @classmethod
    def for_subset(cls, g, I):
        return cls(principal_data(g, I))

    @property
    def n_torus(self):
        return len(self.torus)

    @property
    def nvars(self):
        return len(self.torus) + len(self.generators)

    def var_names(self):
        return [f"s{j + 1}" for j in self.torus] + [f"t{k + 1}" for k in range(len(self.generators))]

    def matrices(self, V):
        return [V.matrix(x) for x in self.generators]

    def series(self, V):
        key = id(V)
        if key not in self._series:
            self._series[key] = (V, exp_series(self.matrices(V), n=V.dim))
        return self._series[key][1]

    def characters(self, V):
        """Torus exponent (root coordinates outside I) of each basis vector."""
        out = []
        for w in V.weights:
            rc = V.rs.to_root_coords(w)
            chi = []
            for j in self.torus:
                if rc[j].denominator != 1:
                    raise ValueError("torus characters need weights in the root lattice")
                chi.append(int(rc[j]))
            out.append(tuple(chi))
        return out

    def function(self, V, phi, u):
        """Laurent polynomial g -> phi(g u) on G^x (variables s..., t...)."""
        return self.functions(V, [phi], np.asarray(u, dtype=object).reshape(-1, 1))[0][0]

    def functions(self, V, phis, U):
        """Table ``[i][j]`` of functions for functionals ``phis[i]`` and columns of ``U``."""
        chis = self.characters(V)
        series = self.series(V)
        U = np.asarray(U, dtype=object)
        out = [[dict() for _ in range(U.shape[1])] for _ in phis]
        for a, P in series.items():
            PU = la.matmul(P, U)
            for i, phi in enumerate(phis):
                for k in range(V.dim):
                    if phi[k] == 0:
                        continue
                    mono = chis[k] + tuple(a)
                    row = PU[k]
                    for j in range(U.shape[1]):
                        if row[j] != 0:
                            d = out[i][j]
                            d[mono] = d.get(mono, 0) + phi[k] * row[j]
        return [[MultiPoly(self.nvars, d) for d in row] for row in out]

    def coefficient_rows(self, V, phi):
        """``{monomial: row}`` with phi(g u) = sum_m m * (row . u)."""
        chis = self.characters(V)
        rows = {}
        for a, P in self.series(V).items():
            for k in range(V.dim):
                if phi[k] == 0:
                    continue
                mono = chis[k] + tuple(a)
                r = rows.get(mono)
                contrib = phi[k] * P[k]
                rows[mono] = contrib if r is None else r + contrib
        return rows

    def functions_of(self, V, phi, vectors):
        """Functions g -> phi(g v) for each v in ``vectors`` (batched)."""
        rows = self.coefficient_rows(V, phi)
        out = [dict() for _ in vectors]
        for mono, r in rows.items():
            for c, v in enumerate(vectors):
                val = np.dot(r, v)
                if val != 0:
                    out[c][mono] = val
        return [MultiPoly(self.nvars, d) for d in out]

    def entry_functions(self, V):
        """``{(i, j): function of the (i, j) matrix entry}``."""
        out = {}
        for mono, M in self.entry_coefficients(V).items():
            for (i, j), val in np.ndenumerate(M):
                if val != 0:
                    out.setdefault((i, j), {})[mono] = val
        return {k: MultiPoly(self.nvars, d) for k, d in out.items()}

    def entry_function(self, V, i, j, table=None):
        table = self.entry_functions(V) if table is None else table
        return table.get((i, j), MultiPoly(self.nvars))

    def entry_coefficients(self, V):
        """``{monomial: matrix}`` with the (i, j) matrix entry function of V."""
        chis = self.characters(V)
        out = {}
        for a, P in self.series(V).items():
            for k in range(V.dim):
                row = P[k]
                if all(x == 0 for x in row):
                    continue
                mono = chis[k] + tuple(a)
                M = out.get(mono)
                if M is None:
                    M = la.zeros(V.dim, V.dim)
                    out[mono] = M
                M[k] = M[k] + row
        return out


class TruncatedUEA:
    """Monomial basis of U^{<=D}(a) for an abelian a with graded basis."""

    def __init__(self, group, bound):
        self.group = group
        self.degrees = tuple(group.degrees)
        self.bound = bound
        m = len(self.degrees)
        mons = []
        if m:
            caps = [int(bound // d) for d in self.degrees]
            for a in product(*[range(c + 1) for c in caps]):
                if self.degree(a) <= bound:
                    mons.append(a)
        else:
            mons = [()]
        self.monomials = sorted(mons, key=lambda a: (self.degree(a), a))
        self._cache = {}

    @classmethod
    def for_modules(cls, group, *modules):
        """Truncation at the largest h-eigenvalue spread among ``modules``."""
        bound = 0
        for V in modules:
            vals = h_eigenvalues(V, group.pd)
            bound = max(bound, max(vals) - min(vals))
        return cls(group, bound)

    def degree(self, a):
        return sum(x * d for x, d in zip(a, self.degrees))

    def __len__(self):
        return len(self.monomials)

    def label(self, a):
        parts = [f"x{j + 1}^{e}" if e > 1 else f"x{j + 1}" for j, e in enumerate(a) if e]
        return "*".join(parts) or "1"

    def monomial_matrices(self, mats, key=None):
        """X^a for every monomial (no factorials), from generator matrices."""
        if key is not None and key in self._cache:
            return self._cache[key][1]
        n = mats[0].shape[0] if mats else None
        out = {}
        for a in self.monomials:
            if not any(a):
                out[a] = la.identity(n) if n is not None else None
                continue
            j = max(k for k in range(len(a)) if a[k])
            prev = tuple(x - (1 if k == j else 0) for k, x in enumerate(a))
            out[a] = la.matmul(mats[j], out[prev])
        res = [out[a] for a in self.monomials]
        if key is not None:
            self._cache[key] = (mats, res)
        return res

    def action(self, V):
        mats = self.group.matrices(V)
        if not mats:
            return [la.identity(V.dim)]
        return self.monomial_matrices(mats, key=id(V))

    def check_truncation(self, V):
        """Every monomial just beyond the bound acts as zero on V."""
        mats = self.group.matrices(V)
        base = dict(zip(self.monomials, self.action(V)))
        for a in self.monomials:
            for j, M in enumerate(mats):
                b = tuple(x + (1 if k == j else 0) for k, x in enumerate(a))
                if self.degree(b) > self.bound and not la.is_zero(la.matmul(M, base[a])):
                    return False, b
        return True, None


# -- annihilators --------------------------------------------------------------

class Annihilator:
    def __init__(self, U, basis, image_dim):
        self.U = U
        self.basis = basis  # columns: coefficient vectors over U.monomials
        self.image_dim = image_dim

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def codim(self):
        return len(self.U) - self.dim

    def describe(self, col):
        return {self.U.label(a): str(c) for a, c in zip(self.U.monomials, col) if c != 0}


def _orbit_matrix(U, V, vec):
    """Columns x^a . vec for the monomials of U."""
    acts = U.action(V)
    M = la.zeros(V.dim, len(U))
    v = np.asarray(vec, dtype=object)
    for c, X in enumerate(acts):
        M[:, c] = la.matmul(X, v)
    return M


def annihilator(U, V, vstar):
    """Ann(vstar) inside U, as an exact kernel basis.  ``V`` is the module of vstar."""
    M = _orbit_matrix(U, V, vstar)
    K = la.nullspace(M)
    return Annihilator(U, K, len(U) - K.shape[1])


def check_ann_inclusion(U, first, second):
    """Whether Ann(v1) is contained in Ann(v2); ``first = (V1, v1)``.

    Returns ``(ok, witness)`` with the witness an annihilator element of v1
    (as {monomial: coefficient}) that does not annihilate v2.
    """
    V1, v1 = first
    V2, v2 = second
    A1 = annihilator(U, V1, v1)
    M2 = _orbit_matrix(U, V2, v2)
    img = la.matmul(M2, A1.basis)
    for c in range(img.shape[1]):
        if any(x != 0 for x in img[:, c]):
            return False, A1.describe(A1.basis[:, c])
    return True, None


def ann_equal(U, first, second):
    a, _ = check_ann_inclusion(U, first, second)
    b, _ = check_ann_inclusion(U, second, first)
    return a and b


# -- solvers ---------------------------------------------------------------------

def _rows(acts, tau):
    tau = np.asarray(tau, dtype=object)
    return np.vstack([la.vecmat(tau, X) for X in acts]) if acts else la.zeros(0, len(tau))


def _values(acts, phi, vecs):
    """Matrix with rows = monomials, columns = phi X^a v for each v in ``vecs``."""
    phi = np.asarray(phi, dtype=object)
    out = la.zeros(len(acts), len(vecs))
    for r, X in enumerate(acts):
        row = la.vecmat(phi, X)
        for c, v in enumerate(vecs):
            out[r, c] = np.dot(row, v)
    return out


def _solve(A, B, what):
    try:
        return la.solve(A, B)
    except la.InconsistentSystem as exc:
        raise CounterexampleError(f"{what}: linear system has no solution", witness={"rhs_column": exc.column}) from None


def _block_acts(U, block, V):
    mats = [block.local(X) for X in U.group.matrices(V)]
    if not mats:
        return [la.identity(block.dim)]
    return U.monomial_matrices(mats)


def _top(n):
    t = la.zeros(n)
    t[0] = Fraction(1)
    return t


def solve_toprow(U, V, vstar, u):
    """w with vstar(x . u) = v_mu^*(x . w) for all x in U; ``u`` may be a list."""
    many = isinstance(u, list)
    us = u if many else [u]
    acts = U.action(V)
    A = _rows(acts, _top(V.dim))
    B = np.hstack([_values(acts, vstar, [x]) for x in us])
    X = _solve(A, B, "toprow")
    out = [X[:, c] for c in range(len(us))]
    return out if many else out[0]


def solve_toprow_pairs(U, V, pairs):
    """Batch version over ``[(vstar, u), ...]``."""
    acts = U.action(V)
    A = _rows(acts, _top(V.dim))
    B = np.hstack([_values(acts, p, [u]) for p, u in pairs]) if pairs else la.zeros(len(acts), 0)
    X = _solve(A, B, "toprow")
    return [X[:, c] for c in range(len(pairs))]


def solve_bijection(U, V, vstar, w):
    """u with v_mu^*(x . w) = vstar(x . u); needs vstar(v_mu) != 0."""
    if vstar[0] == 0:
        raise ValueError("bijection needs vstar(v_mu) != 0")
    many = isinstance(w, list)
    ws = w if many else [w]
    acts = U.action(V)
    A = _rows(acts, vstar)
    B = _values(acts, _top(V.dim), ws)
    X = _solve(A, B, "bijection")
    out = [X[:, c] for c in range(len(ws))]
    return out if many else out[0]


def solve_telescope(U, Vmu, w, Vlam):
    """z in V_lam with v_mu^*(x . w) = v_lam^*(x . z) for all x in U."""
    rs = Vmu.rs
    diff = rs.to_root_coords(tuple(a - b for a, b in zip(Vlam.highest.coords, Vmu.highest.coords)))
    if any(c < 0 or c.denominator != 1 for c in diff):
        raise ValueError("telescope needs mu <= lambda")
    many = isinstance(w, list)
    ws = w if many else [w]
    A = _rows(U.action(Vlam), _top(Vlam.dim))
    B = _values(U.action(Vmu), _top(Vmu.dim), ws)
    X = _solve(A, B, "telescope")
    out = [X[:, c] for c in range(len(ws))]
    return out if many else out[0]


# -- Levi-block variants ------------------------------------------------------------

def levi_leq(rs, I, lower, upper):
    """sigma <=_L rho: upper - lower is a non-negative combination of alpha_i, i in I."""
    rc = rs.to_root_coords(tuple(a - b for a, b in zip(upper, lower)))
    for j, c in enumerate(rc):
        if c.denominator != 1:
            return False
        if j in I:
            if c < 0:
                return False
        elif c != 0:
            return False
    return True


def find_dominating_block(rs, blocks_lam, block_sigma):
    """A block (alpha, rho) of V_lam with the same alpha and sigma <=_L rho."""
    for b in blocks_lam:
        if b.alpha == block_sigma.alpha and levi_leq(rs, block_sigma.I, block_sigma.weight, b.weight):
            return b
    return None


def solve_toprow_general(U, V, block, wstar_loc, u_loc):
    """v in the block with w*(g u) = w^{alpha*}_rho(g v) on G^x (local coordinates)."""
    many = isinstance(u_loc, list)
    us = u_loc if many else [u_loc]
    acts = _block_acts(U, block, V)
    A = _rows(acts, _top(block.dim))
    B = np.hstack([_values(acts, wstar_loc, [x]) for x in us])
    X = _solve(A, B, "toprow (Levi block)")
    out = [X[:, c] for c in range(len(us))]
    return out if many else out[0]


def solve_telescope_general(U, Vmu, block_sigma, v_loc, Vlam, block_rho):
    if block_sigma.alpha != block_rho.alpha:
        raise ValueError(f"central characters differ: {block_sigma.alpha} vs {block_rho.alpha}")
    if not levi_leq(Vmu.rs, block_sigma.I, block_sigma.weight, block_rho.weight):
        raise ValueError("telescope needs sigma <=_L rho")
    many = isinstance(v_loc, list)
    vs = v_loc if many else [v_loc]
    A = _rows(_block_acts(U, block_rho, Vlam), _top(block_rho.dim))
    B = _values(_block_acts(U, block_sigma, Vmu), _top(block_sigma.dim), vs)
    X = _solve(A, B, "telescope (Levi block)")
    out = [X[:, c] for c in range(len(vs))]
    return out if many else out[0]


def solve_bijection_general(U, V, block, phi_loc, y_loc):
    if phi_loc[0] == 0:
        raise ValueError("bijection needs the functional to be nonzero on the block's highest vector")
    many = isinstance(y_loc, list)
    ys = y_loc if many else [y_loc]
    acts = _block_acts(U, block, V)
    A = _rows(acts, phi_loc)
    B = _values(acts, _top(block.dim), ys)
    X = _solve(A, B, "bijection (Levi block)")
    out = [X[:, c] for c in range(len(ys))]
    return out if many else out[0]


# -- symbolic verification ----------------------------------------------------------

def same_function(G, V1, phi1, u1, V2, phi2, u2):
    """Coefficient-exact comparison of g -> phi1(g u1) and g -> phi2(g u2) on G^x."""
    return G.function(V1, phi1, u1) == G.function(V2, phi2, u2)


def verify_toprow(G, V, vstar, u, w):
    return same_function(G, V, vstar, u, V, _top(V.dim), w)


def verify_bijection(G, V, vstar, w, u):
    return same_function(G, V, _top(V.dim), w, V, vstar, u)


def verify_telescope(G, Vmu, w, Vlam, z):
    return same_function(G, Vmu, _top(Vmu.dim), w, Vlam, _top(Vlam.dim), z)
