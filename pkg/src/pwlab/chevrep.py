"""Chevalley bases and exact highest-weight modules.

Everything is built from the Cartan matrix alone.  A highest-weight module
is grown downward from its highest vector: at each weight the candidate
vectors ``F_i u`` are compared through their images under all ``E_j``
(that map is injective below the top weight of an irreducible module), so
the basis and the matrices of ``E_i``, ``F_i`` come out of one exact row
reduction per weight.  The Lie algebra itself is the adjoint module; root
vectors for non-simple roots are defined recursively as brackets with simple
root vectors, and any module applies the same recursion, so module matrices
and structure constants always agree.
"""
import os
from fractions import Fraction
from itertools import product

import numpy as np

from . import linalg as la
from .polynomial import MultiPoly
from .rootdata import Weight, weyl_dimension

DEFAULT_MAX_DIM = 5000


class DimensionCapExceeded(ValueError):
    pass


def max_dim():
    raw = os.environ.get("PWLAB_MAX_DIM", "")
    try:
        return int(raw) if raw.strip() else DEFAULT_MAX_DIM
    except ValueError:
        raise DimensionCapExceeded(f"PWLAB_MAX_DIM must be an integer, got {raw!r}") from None


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _build_module(rs, lam):
    """Spanning-set closure for V_lam.

    Returns ``(weights, E, F)`` where ``E[j][a]`` is the sparse image
    ``{b: coeff}`` of basis vector ``a`` under ``E_j`` (same for ``F``).
    """
    l = rs.rank
    lam = tuple(lam)
    cap = max_dim()
    weights = [lam]
    by_weight = {lam: [0]}
    E = [{0: {}} for _ in range(l)]
    F = [dict() for _ in range(l)]
    layer = [lam]
    while layer:
        targets = {}
        for nu in layer:
            for i in range(l):
                mu = _sub(nu, rs.cartan[i])
                targets.setdefault(mu, []).extend((i, u) for u in by_weight[nu])
        nxt = []
        for mu in sorted(targets, reverse=True):
            cands = targets[mu]
            cols = []
            for i, u in cands:
                vec = {}
                for j in range(l):
                    for a, ca in E[j][u].items():
                        for b, cb in F[i][a].items():
                            vec[j, b] = vec.get((j, b), 0) + ca * cb
                nu_i = weights[u][i]
                if nu_i:
                    vec[i, u] = vec.get((i, u), 0) + nu_i
                cols.append({k: v for k, v in vec.items() if v != 0})
            keys = sorted(set().union(*cols))
            new_idx = []
            if keys:
                M = la.zeros(len(keys), len(cands))
                kpos = {k: r for r, k in enumerate(keys)}
                for c, vec in enumerate(cols):
                    for k, v in vec.items():
                        M[kpos[k], c] = Fraction(v)
                R, pivots = la.rref(M)
                for c in pivots:
                    idx = len(weights)
                    weights.append(mu)
                    new_idx.append(idx)
                    for j in range(l):
                        E[j][idx] = {}
                    for (j, b), v in cols[c].items():
                        E[j][idx][b] = Fraction(v)
                for c, (i, u) in enumerate(cands):
                    F[i][u] = {new_idx[k]: R[k, c] for k in range(len(pivots)) if R[k, c] != 0}
            else:
                for i, u in cands:
                    F[i][u] = {}
            if new_idx:
                by_weight[mu] = new_idx
                nxt.append(mu)
            if len(weights) > cap:
                raise DimensionCapExceeded(f"representation dimension exceeds PWLAB_MAX_DIM={cap}")
        layer = nxt
    for i in range(l):
        for a in range(len(weights)):
            F[i].setdefault(a, {})
    return weights, E, F


def _dense(sparse, n):
    M = la.zeros(n, n)
    for a, img in sparse.items():
        for b, c in img.items():
            M[b, a] = Fraction(c)
    return M


class LieAlgebra:
    """Simple Lie algebra in a Chevalley basis.

    Basis order: ``e_beta`` for positive roots (by height), ``h_1..h_l``,
    then ``f_beta`` in the same root order.  Elements are coordinate
    vectors (object arrays) in this basis.
    """

    def __init__(self, rs):
        self.rs = rs
        self.rank = l = rs.rank
        self.roots = rs.positive_roots
        N = len(self.roots)
        self.n_pos = N
        self.dim = 2 * N + l
        self.root_of = [r for r in self.roots] + [(0,) * l] * l + [tuple(-x for x in r) for r in self.roots]
        self._index = {}
        for k, r in enumerate(self.roots):
            self._index[r] = k
            self._index[tuple(-x for x in r)] = N + l + k
        self.labels = (
            [f"e{list(r)}" for r in self.roots]
            + [f"h{i + 1}" for i in range(l)]
            + [f"f{list(r)}" for r in self.roots]
        )
        # recursion data: beta = alpha_i + gamma, p = length of the string below gamma
        self.recipes = {}
        for beta in self.roots:
            if sum(beta) == 1:
                continue
            for i in range(l):
                gamma = _sub(beta, rs.simple_root(i))
                if gamma in rs.root_index:
                    p = 0
                    cur = gamma
                    while True:
                        cur = _sub(cur, rs.simple_root(i))
                        if cur in rs.root_index:
                            p += 1
                        else:
                            break
                    self.recipes[beta] = (i, gamma, p)
                    break
        self.coroots = {}
        for beta in self.roots:
            d_beta = rs.root_inner(beta, beta) / 2
            self.coroots[beta] = tuple(beta[i] * rs.sym[i] / d_beta for i in range(l))
        self.f_scale = {}
        theta_w = rs.to_weight_coords(rs.highest_root)
        weights, E, F = _build_module(rs, theta_w)
        n = len(weights)
        assert n == self.dim
        Em = [_dense(E[i], n) for i in range(l)]
        Fm = [_dense(F[i], n) for i in range(l)]
        self._module_weights = weights
        mats = self._basis_matrices(Em, Fm, calibrate=True)
        self._structure(mats, weights)

    # -- construction helpers ---------------------------------------------
    def _basis_matrices(self, Em, Fm, calibrate=False):
        l, N = self.rank, self.n_pos
        Eb, Fb = {}, {}
        for i in range(l):
            Eb[self.rs.simple_root(i)] = Em[i]
            Fb[self.rs.simple_root(i)] = Fm[i]
        H = [la.commutator(Em[i], Fm[i]) for i in range(l)]
        for beta in self.roots:
            if beta in Eb:
                continue
            i, gamma, p = self.recipes[beta]
            si = self.rs.simple_root(i)
            Eb[beta] = la.commutator(Eb[si], Eb[gamma]) / (p + 1)
            Fraw = la.commutator(Fb[gamma], Fb[si])
            if calibrate:
                comm = la.commutator(Eb[beta], Fraw)
                Hb = sum((c * H[k] for k, c in enumerate(self.coroots[beta]) if c), la.zeros(*H[0].shape))
                pos = next(k for k in range(Hb.shape[0]) if Hb[k, k] != 0)
                scale = Hb[pos, pos] / comm[pos, pos]
                self.f_scale[beta] = scale
            Fb[beta] = Fraw * self.f_scale[beta]
        return [Eb[r] for r in self.roots] + H + [Fb[r] for r in self.roots]

    def _structure(self, mats, weights):
        n, l = self.dim, self.rank
        probes = []
        for k in range(n):
            X = mats[k]
            if k < self.n_pos or k >= self.n_pos + l:
                nz = np.argwhere(np.vectorize(lambda x: x != 0, otypes=[bool])(X))
                probes.append(tuple(nz[0]))
            else:
                probes.append(None)
        # diagonal positions at the weights alpha_1..alpha_l of the adjoint module
        diag = [weights.index(tuple(self.rs.cartan[k])) for k in range(l)]
        cart = la.qmat(self.rs.cartan)
        ad = [la.zeros(n, n) for _ in range(n)]
        for a in range(n):
            Xa = mats[a]
            for b in range(a + 1, n):
                Xb = mats[b]
                r = _add(self.root_of[a], self.root_of[b])

                def entry(i, j):
                    return np.dot(Xa[i, :], Xb[:, j]) - np.dot(Xb[i, :], Xa[:, j])

                if any(r):
                    k = self._index.get(r)
                    if k is None:
                        continue
                    i, j = probes[k]
                    c = entry(i, j) / mats[k][i, j]
                    if c != 0:
                        ad[a][k, b] = c
                        ad[b][k, a] = -c
                else:
                    d = la.qvec([entry(p, p) for p in diag])
                    coeffs = la.solve(cart, d)
                    for i in range(l):
                        if coeffs[i] != 0:
                            ad[a][self.n_pos + i, b] = coeffs[i]
                            ad[b][self.n_pos + i, a] = -coeffs[i]
        self._ad = ad

    # -- elements ----------------------------------------------------------
    def zero(self):
        return la.zeros(self.dim)

    def basis_vector(self, k):
        v = self.zero()
        v[k] = Fraction(1)
        return v

    def index_e(self, root):
        return self._index[tuple(root)]

    def index_f(self, root):
        return self._index[tuple(-x for x in root)]

    def index_h(self, i):
        return self.n_pos + i

    def e(self, i):
        return self.basis_vector(self.index_e(self.rs.simple_root(i)))

    def f(self, i):
        return self.basis_vector(self.index_f(self.rs.simple_root(i)))

    def h(self, i):
        return self.basis_vector(self.index_h(i))

    def e_root(self, root):
        return self.basis_vector(self.index_e(root))

    def f_root(self, root):
        return self.basis_vector(self.index_f(root))

    def cartan_element(self, values):
        """Element s of the Cartan subalgebra with alpha_i(s) = values[i]."""
        c = la.solve(la.qmat(self.rs.cartan), la.qvec(values))
        v = self.zero()
        for i in range(self.rank):
            v[self.index_h(i)] = c[i]
        return v

    def ad_basis(self, k):
        return self._ad[k]

    def ad(self, x):
        out = la.zeros(self.dim, self.dim)
        for k, c in enumerate(x):
            if c != 0:
                out = out + c * self._ad[k]
        return out

    matrix = ad

    def bracket(self, x, y):
        return la.matmul(self.ad(x), y)

    def structure_constant(self, a, b, k):
        return self._ad[a][k, b]

    def root_space_part(self, x, keep):
        """Zero out the coordinates whose root fails ``keep(root)``."""
        out = self.zero()
        for k, c in enumerate(x):
            if keep(self.root_of[k]):
                out[k] = c
        return out

    def __repr__(self):
        return f"LieAlgebra({self.rs.name}, dim={self.dim})"


def chevalley_basis(rs):
    return LieAlgebra(rs)


class Representation:
    """Finite-dimensional module with a weight basis and exact matrices.

    Index 0 is the highest vector (for a dual module: the lowest dual
    vector, i.e. the coordinate functional of the highest vector).
    """

    def __init__(self, g, highest, weights, E, F, dual=False, parent=None):
        self.g = g
        self.rs = g.rs
        self.highest = highest
        self.weights = [tuple(w) for w in weights]
        self.dim = len(self.weights)
        self.E = E
        self.F = F
        self.dual = dual
        self.parent = parent
        self.H = []
        for i in range(g.rank):
            D = la.zeros(self.dim, self.dim)
            for k, w in enumerate(self.weights):
                D[k, k] = Fraction(w[i])
            self.H.append(D)
        self._basis_mats = None
        self._by_weight = {}
        for k, w in enumerate(self.weights):
            self._by_weight.setdefault(w, []).append(k)

    def __repr__(self):
        tag = "dual " if self.dual else ""
        return f"Representation({tag}{self.rs.name}, highest={self.highest.coords}, dim={self.dim})"

    @property
    def highest_index(self):
        return 0

    def weight_space(self, mu):
        return list(self._by_weight.get(tuple(mu), []))

    def weight_multiplicities(self):
        return {w: len(ix) for w, ix in self._by_weight.items()}

    def distinct_weights(self):
        return list(self._by_weight)

    def basis_matrices(self):
        if self._basis_mats is None:
            if self.dual:
                self._basis_mats = [-M.T for M in self.parent.basis_matrices()]
            else:
                self._basis_mats = self.g._basis_matrices(self.E, self.F)
        return self._basis_mats

    def matrix(self, x):
        mats = self.basis_matrices()
        out = la.zeros(self.dim, self.dim)
        for k, c in enumerate(x):
            if c != 0:
                out = out + c * mats[k]
        return out

    def h_value(self, k, hvec):
        """Eigenvalue of a Cartan element (given by alpha-values) on basis vector k."""
        w = self.weights[k]
        return sum(Fraction(w[i]) * hvec[i] for i in range(len(w)))

    def unit(self, k):
        v = la.zeros(self.dim)
        v[k] = Fraction(1)
        return v


def highest_weight_rep(g, lam):
    """Irreducible module V_lam (``lam`` a Weight or weight coordinates)."""
    rs = g.rs
    if not isinstance(lam, Weight):
        lam = rs.weight(lam)
    if not lam.is_dominant():
        raise ValueError(f"highest weight {lam} is not dominant")
    cap = max_dim()
    d = weyl_dimension(rs, lam.coords)
    if d > cap:
        raise DimensionCapExceeded(f"dim V_{lam} = {d} exceeds PWLAB_MAX_DIM={cap}")
    cache = g.__dict__.setdefault("_rep_cache", {})
    if lam.coords in cache:
        return cache[lam.coords]
    weights, E, F = _build_module(rs, lam.coords)
    n = len(weights)
    V = Representation(g, lam, weights, [_dense(E[i], n) for i in range(g.rank)],
                       [_dense(F[i], n) for i in range(g.rank)])
    cache[lam.coords] = V
    return V


def dual_rep(V):
    """Dual module: action by minus the transpose, weights negated."""
    if V.dual:
        raise ValueError("dual of a dual module is not needed here")
    if V.__dict__.get("_dual") is not None:
        return V._dual
    D = Representation(
        V.g, V.highest, [tuple(-x for x in w) for w in V.weights],
        [-M.T for M in V.E], [-M.T for M in V.F], dual=True, parent=V,
    )
    V._dual = D
    return D


def lowest_dual_vector(V):
    """v_lam^* as a row vector on V: the coordinate functional of index 0."""
    return V.unit(0)


# -- tensor products and the Cartan projection -------------------------------

def _sparse_cols(M):
    cols = []
    for a in range(M.shape[1]):
        cols.append({b: M[b, a] for b in range(M.shape[0]) if M[b, a] != 0})
    return cols


class CartanProjection:
    """Equivariant projection V_mu (x) V_nu -> V_{mu+nu}, as a matrix.

    Column ``a * dim V_nu + b`` is the image of ``u_a (x) w_b``.
    """

    def __init__(self, Vmu, Vnu, Vtarget, matrix):
        self.source = (Vmu, Vnu)
        self.target = Vtarget
        self.matrix = matrix

    def apply(self, u1, u2):
        t = np.array([x * y for x in u1 for y in u2], dtype=object)
        return la.matmul(self.matrix, t)

    def tensor_matrix(self, X1, X2):
        """Action matrix of an algebra element on V_mu (x) V_nu."""
        n1, n2 = X1.shape[0], X2.shape[0]
        return _kron(X1, la.identity(n2)) + _kron(la.identity(n1), X2)

    def check_equivariance(self):
        Vmu, Vnu = self.source
        for Xs in (zip(Vmu.E, Vnu.E, self.target.E), zip(Vmu.F, Vnu.F, self.target.F)):
            for X1, X2, Y in Xs:
                left = la.matmul(self.matrix, self.tensor_matrix(X1, X2))
                right = la.matmul(Y, self.matrix)
                if not la.is_zero(left - right):
                    return False
        return True


def _kron(A, B):
    m, n = A.shape
    p, q = B.shape
    out = la.zeros(m * p, n * q)
    for i in range(m):
        for j in range(n):
            a = A[i, j]
            if a != 0:
                out[i * p:(i + 1) * p, j * q:(j + 1) * q] = a * B
    return out


def cartan_projection(Vmu, Vnu):
    g = Vmu.g
    if Vnu.g is not g:
        raise ValueError("representations over different Lie algebras")
    l = g.rank
    target_w = _add(Vmu.highest.coords, Vnu.highest.coords)
    Vt = highest_weight_rep(g, target_w)
    n1, n2 = Vmu.dim, Vnu.dim
    E1 = [_sparse_cols(M) for M in Vmu.E]
    E2 = [_sparse_cols(M) for M in Vnu.E]
    groups = {}
    for a in range(n1):
        for b in range(n2):
            groups.setdefault(_add(Vmu.weights[a], Vnu.weights[b]), []).append(a * n2 + b)
    rs = g.rs

    def depth(w):
        return sum(rs.to_root_coords(_sub(target_w, w)))

    P = {}
    for kappa in sorted(groups, key=lambda w: (depth(w), w)):
        idxs = groups[kappa]
        tgt = Vt.weight_space(kappa)
        if not tgt:
            for x in idxs:
                P[x] = {}
            continue
        if kappa == target_w:
            assert len(idxs) == 1
            P[idxs[0]] = {tgt[0]: Fraction(1)}
            continue
        rows = []
        for j in range(l):
            up = Vt.weight_space(_add(kappa, rs.cartan[j]))
            rows.extend((j, b) for b in up)
        rpos = {r: k for k, r in enumerate(rows)}
        M = la.zeros(len(rows), len(tgt))
        for c, t in enumerate(tgt):
            for j in range(l):
                for b in range(Vt.dim):
                    v = Vt.E[j][b, t]
                    if v != 0:
                        M[rpos[j, b], c] = v
        B = la.zeros(len(rows), len(idxs))
        for c, x in enumerate(idxs):
            a, b = divmod(x, n2)
            for j in range(l):
                # E_j(u_a (x) w_b) = E_j u_a (x) w_b + u_a (x) E_j w_b
                terms = [(a2 * n2 + b, ca) for a2, ca in E1[j][a].items()]
                terms += [(a * n2 + b2, cb) for b2, cb in E2[j][b].items()]
                for y, cy in terms:
                    for t, ct in P[y].items():
                        B[rpos[j, t], c] += cy * ct
        X = la.solve(M, B)
        for c, x in enumerate(idxs):
            P[x] = {tgt[k]: X[k, c] for k in range(len(tgt)) if X[k, c] != 0}
    mat = la.zeros(Vt.dim, n1 * n2)
    for x, img in P.items():
        for t, c in img.items():
            mat[t, x] = c
    return CartanProjection(Vmu, Vnu, Vt, mat)


# -- Levi branching -----------------------------------------------------------

class LeviBlock:
    """One irreducible constituent W^alpha_rho of V restricted to L_I.

    ``basis`` columns span the block inside V (column 0 is the highest
    vector); ``dual`` rows are the matching dual basis, so ``dual[0]`` is
    the lowest dual vector of the dual block.
    """

    def __init__(self, I, alpha, rho, weight, basis, weights):
        self.I = I
        self.alpha = alpha
        self.rho = rho
        self.weight = weight
        self.basis = basis
        self.weights = weights
        self.dual = None

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def highest_vector(self):
        return self.basis[:, 0]

    @property
    def lowest_dual(self):
        return self.dual[0]

    def local(self, X):
        """Matrix of an operator preserving the block, in block coordinates."""
        return la.matmul(self.dual, la.matmul(X, self.basis))

    def project_functional(self, phi):
        """Restriction of a functional on V to the block, in block coordinates."""
        return la.vecmat(phi, self.basis)

    def __repr__(self):
        return f"LeviBlock(alpha={self.alpha}, rho={self.rho}, dim={self.dim})"


def _central_character(rs, weight, I):
    rc = rs.to_root_coords(weight)
    return tuple(int(x) if x.denominator == 1 else x for j, x in enumerate(rc) if j not in I)


def restrict_to_levi(V, I):
    I = tuple(sorted(set(I)))
    rs = V.rs
    cache = V.__dict__.setdefault("_levi_cache", {})
    if I in cache:
        return cache[I]
    blocks = []
    top = V.highest.coords if not V.dual else None
    order = sorted(V.distinct_weights(),
                   key=lambda w: (sum(rs.to_root_coords(_sub(V.weights[0], w))), w) if top is not None else w)
    for kappa in order:
        S = V.weight_space(kappa)
        if I:
            rows = []
            for i in I:
                M = V.E[i]
                for b in V.weight_space(_add(kappa, rs.cartan[i])):
                    rows.append([M[b, s] for s in S])
            K = la.nullspace(la.qmat(rows)) if rows else la.identity(len(S))
        else:
            K = la.identity(len(S))
        for c in range(K.shape[1]):
            w = la.zeros(V.dim)
            for k, s in enumerate(S):
                w[s] = K[k, c]
            vecs, wts = _levi_closure(V, I, w, kappa)
            basis = la.zeros(V.dim, len(vecs))
            for k, v in enumerate(vecs):
                basis[:, k] = v
            blocks.append(LeviBlock(I, _central_character(rs, kappa, I), tuple(kappa[i] for i in I),
                                    kappa, basis, wts))
    full = np.hstack([b.basis for b in blocks])
    if full.shape[1] != V.dim:
        raise AssertionError("Levi blocks do not span the module")
    inv = la.solve(full, la.identity(V.dim))
    pos = 0
    for b in blocks:
        b.dual = inv[pos:pos + b.dim, :]
        pos += b.dim
    cache[I] = blocks
    return blocks


def _levi_closure(V, I, w, kappa):
    rs = V.rs
    vecs, wts = [w], [kappa]
    by_w = {kappa: [w]}
    frontier = [(w, kappa)]
    while frontier:
        nxt = []
        for v, wt in frontier:
            for i in I:
                u = la.matmul(V.F[i], v)
                if la.is_zero(u):
                    continue
                nw = _sub(wt, rs.cartan[i])
                have = by_w.setdefault(nw, [])
                if have:
                    A = np.column_stack(have)
                    if la.in_span(A, u):
                        continue
                have.append(u)
                vecs.append(u)
                wts.append(nw)
                nxt.append((u, nw))
        frontier = nxt
    return vecs, wts


# -- exponentials --------------------------------------------------------------

def _nilpotent_powers(X, limit=None):
    n = X.shape[0]
    limit = n if limit is None else limit
    pows = [la.identity(n)]
    cur = X
    while not la.is_zero(cur):
        if len(pows) > limit:
            raise ValueError("matrix is not nilpotent; exponential series does not terminate")
        pows.append(cur)
        cur = la.matmul(X, cur)
    return pows


def exp_nilpotent_action(x, V=None, coeff=1):
    """exp(coeff * X) as a finite series, X = action of x on V (or x itself)."""
    X = V.matrix(x) if V is not None else np.asarray(x, dtype=object)
    pows = _nilpotent_powers(X)
    out = la.zeros(*X.shape)
    fact = 1
    c = 1
    for k, P in enumerate(pows):
        if k:
            fact *= k
            c = c * coeff
        out = out + P * (Fraction(1, fact) * c) if not isinstance(c, MultiPoly) else out + _scale(P, c / fact)
    return out


def _scale(M, c):
    out = np.empty(M.shape, dtype=object)
    for idx, v in np.ndenumerate(M):
        out[idx] = c * v if v != 0 else Fraction(0)
    return out


def exp_series(mats, n=None):
    """Terms of exp(sum_j t_j X_j) for commuting nilpotent X_j.

    Returns ``{a: X^a / a!}`` over the exponent vectors with nonzero X^a.
    ``n`` is only needed when ``mats`` is empty.
    """
    mats = [np.asarray(M, dtype=object) for M in mats]
    if not mats:
        return {(): la.identity(n)}
    n = mats[0].shape[0]
    for M in mats:
        _nilpotent_powers(M)
    for A, B in product(mats, repeat=2):
        if not la.is_zero(la.commutator(A, B)):
            raise ValueError("exp_series needs commuting matrices")
    m = len(mats)
    start = (0,) * m
    terms = {start: la.identity(n)}
    raw = {start: la.identity(n)}
    stack = [start]
    while stack:
        a = stack.pop()
        last = max((j for j in range(m) if a[j]), default=0)
        for j in range(last, m):
            b = tuple(x + (1 if k == j else 0) for k, x in enumerate(a))
            P = la.matmul(mats[j], raw[a])
            if la.is_zero(P):
                continue
            raw[b] = P
            fact = 1
            for x in b:
                for y in range(2, x + 1):
                    fact *= y
            terms[b] = P / fact
            stack.append(b)
    return dict(sorted(terms.items()))


def exp_symbolic(mats, nvars=None, offset=0):
    """exp(sum_j t_j X_j) as a matrix of MultiPoly entries in t_1..t_m."""
    series = exp_series(mats)
    m = len(mats)
    nvars = m if nvars is None else nvars
    n = mats[0].shape[0]
    out = np.empty((n, n), dtype=object)
    for idx in np.ndindex(n, n):
        out[idx] = MultiPoly(nvars)
    for a, P in series.items():
        mono = [0] * nvars
        mono[offset:offset + m] = a
        mono = tuple(mono)
        for idx, v in np.ndenumerate(P):
            if v != 0:
                out[idx] = out[idx] + MultiPoly(nvars, {mono: v})
    return out


# -- group words -----------------------------------------------------------------

class GroupWord:
    """Finite product of exponentials exp(c x), c a Fraction or MultiPoly."""

    def __init__(self, factors=()):
        self.factors = tuple(factors)

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def exp(cls, x, coeff=1):
        return cls(((coeff, np.asarray(x, dtype=object)),))

    @classmethod
    def weyl_rep(cls, g, i):
        """n_i = exp(e_i) exp(-f_i) exp(e_i)."""
        return cls(((1, g.e(i)), (-1, g.f(i)), (1, g.e(i))))

    @classmethod
    def weyl_word(cls, g, w):
        word = cls()
        for i in w.word:
            word = word * cls.weyl_rep(g, i)
        return word

    def __mul__(self, other):
        return GroupWord(self.factors + other.factors)

    def inverse(self):
        return GroupWord(tuple((-c, x) for c, x in reversed(self.factors)))

    def __len__(self):
        return len(self.factors)

    def matrix(self, V):
        """Product of factor matrices on V (a Representation or LieAlgebra)."""
        out = None
        for c, x in self.factors:
            M = exp_nilpotent_action(V.matrix(x), coeff=c)
            out = M if out is None else la.matmul(out, M)
        if out is None:
            n = V.dim
            out = la.identity(n)
        return out

    def act(self, V, vec):
        """g . vec, applying factors right to left without forming matrices."""
        v = np.asarray(vec, dtype=object)
        for c, x in reversed(self.factors):
            X = V.matrix(x)
            term = v
            total = v
            k = 1
            while True:
                term = la.matmul(X, term)
                if all(t == 0 for t in term):
                    break
                term = _scale(term, Fraction(1, k) * c) if not isinstance(c, MultiPoly) else _scale(term, c / k)
                total = total + term
                k += 1
                if k > V.dim + 1:
                    raise ValueError("non-nilpotent factor in group word")
            v = total
        return v

    def act_dual(self, V, phi):
        """(g . phi)(u) = phi(g^{-1} u): returns the functional as a row vector."""
        M = self.inverse().matrix(V)
        return la.vecmat(phi, M)
