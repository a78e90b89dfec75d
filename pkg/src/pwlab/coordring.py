"""Graded pieces of the flag and wonderful coordinate rings, restricted to G^x.

Degree n of the flag side is V_{n lam} (a vector u is the section whose
value along the orbit is g -> phi(g u), phi = h . v_{n lam}^*).  Degree n of
the wonderful side is the sum over dominant mu <= n lam of V_mu^* (x) V_mu,
a matrix entry giving g -> v^*(g u).  The common factor lam(t)^n never
vanishes, so both vanishing ideals are read off from functions on G^x
alone, which are exact Laurent polynomials (see ``uea.CentralizerGroup``).
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg as la
from .chevrep import GroupWord, cartan_projection, dual_rep, highest_weight_rep, restrict_to_levi
from .peterson import general_flag_test, random_word
from .polynomial import MultiPoly
from .rootdata import Weight, dominant_weights_below
from .uea import (
    CentralizerGroup,
    TruncatedUEA,
    find_dominating_block,
    solve_bijection_general,
    solve_telescope,
    solve_telescope_general,
    solve_toprow_general,
    solve_toprow_pairs,
)


def validate_lambda(rs, lam):
    if not isinstance(lam, Weight):
        lam = rs.weight(lam)
    if not lam.in_root_lattice:
        raise ValueError(f"lambda {lam} is not in the root lattice")
    bad = [i + 1 for i, c in enumerate(lam.coords) if c <= 0]
    if bad:
        raise ValueError(f"lambda {lam} is not regular dominant (fails at alpha_{bad[0]})")
    return lam


@dataclass
class GradedComponent:
    g: object
    lam: Weight
    n: int
    side: str
    constituents: list

    @property
    def top(self):
        return self.lam.scale(self.n)

    @property
    def dimension(self):
        if self.side == "flag":
            return self.constituents[0].dim
        return sum(V.dim ** 2 for _, V in self.constituents)


def graded_component(g, lam, n, side):
    rs = g.rs
    lam = validate_lambda(rs, lam)
    if n < 0:
        raise ValueError("degree must be non-negative")
    if side not in ("flag", "wonderful"):
        raise ValueError(f"side must be 'flag' or 'wonderful', got {side!r}")
    top = lam.scale(n)
    if side == "flag":
        return GradedComponent(g, lam, n, side, [highest_weight_rep(g, top)])
    mus = dominant_weights_below(rs, top)
    return GradedComponent(g, lam, n, side, [(mu, highest_weight_rep(g, mu)) for mu in mus])


@dataclass
class RestrictionImage:
    """Functions on G^x spanned by a component, as coefficient columns."""

    tag: str
    keys: list
    matrix: np.ndarray  # rows: monomials in ``keys``; columns: the component's basis
    component_dim: int
    quotient_dim: int = 0

    @property
    def ideal_dim(self):
        return self.component_dim - self.quotient_dim

    def aligned(self, keys):
        pos = {k: r for r, k in enumerate(self.keys)}
        out = la.zeros(len(keys), self.matrix.shape[1])
        for r, k in enumerate(keys):
            if k in pos:
                out[r] = self.matrix[pos[k]]
        return out

    def ideal_basis(self):
        return la.nullspace(self.matrix)


def _image(tag, columns, component_dim):
    keys = sorted(set().union(*[c.keys() for c in columns])) if columns else []
    M = la.zeros(len(keys), len(columns))
    pos = {k: r for r, k in enumerate(keys)}
    for c, col in enumerate(columns):
        for k, v in col.items():
            M[pos[k], c] = v
    img = RestrictionImage(tag, keys, M, component_dim)
    img.quotient_dim = la.rank(M) if keys else 0
    return img


def flag_functional(V, h=None):
    """h . v^*_{top} as a row vector on V."""
    top = V.unit(0)
    return top if h is None or not len(h) else h.act_dual(V, top)


def restrict_to_subgroup(component, G, h=None, tag=None):
    tag = tag or ("G^e" if not G.torus else f"G^x(I={list(i + 1 for i in G.I)})")
    if component.side == "flag":
        V = component.constituents[0]
        phi = flag_functional(V, h)
        rows = G.coefficient_rows(V, phi)
        cols = [dict() for _ in range(V.dim)]
        for mono, r in rows.items():
            for j in range(V.dim):
                if r[j] != 0:
                    cols[j][mono] = r[j]
        return _image(tag, cols, V.dim)
    cols = []
    for _, V in component.constituents:
        coeffs = G.entry_coefficients(V)
        for i in range(V.dim):
            for j in range(V.dim):
                cols.append({m: M[i, j] for m, M in coeffs.items() if M[i, j] != 0})
    return _image(tag, cols, component.dimension)


@dataclass
class IsoReport:
    n: int
    flag_dim: int
    wonderful_dim: int
    flag_quotient: int
    wonderful_quotient: int
    injective: bool
    surjective: bool
    chain: dict = field(default_factory=dict)

    @property
    def ok(self):
        chain_ok = all(v is not False for v in self.chain.values())
        return self.injective and self.surjective and self.flag_quotient == self.wonderful_quotient and chain_ok

    def as_dict(self):
        return {
            "degree": self.n,
            "flag_dim": self.flag_dim,
            "wonderful_dim": self.wonderful_dim,
            "flag_quotient_dim": self.flag_quotient,
            "wonderful_quotient_dim": self.wonderful_quotient,
            "injective": self.injective,
            "surjective": self.surjective,
            "chain": self.chain,
        }


def _psi_prime_kernel(G, Vtop, phi):
    """ker of u -> (phi (x) u) t^{n lam}, computed through the matrix-entry table."""
    coeffs = G.entry_coefficients(Vtop)
    keys = sorted(coeffs)
    M = la.zeros(len(keys), Vtop.dim)
    for r, k in enumerate(keys):
        M[r] = la.vecmat(phi, coeffs[k])
    return la.nullspace(M) if keys else la.identity(Vtop.dim)


def _iso(G, lam, n, h):
    g = G.g
    flag = graded_component(g, lam, n, "flag")
    won = graded_component(g, lam, n, "wonderful")
    fimg = restrict_to_subgroup(flag, G, h)
    wimg = restrict_to_subgroup(won, G)
    Vtop = flag.constituents[0]
    phi = flag_functional(Vtop, h)
    # injectivity: ker Psi' equals the flag-side vanishing ideal
    K1 = _psi_prime_kernel(G, Vtop, phi)
    K2 = fimg.ideal_basis()
    if K1.shape[1] == 0 and K2.shape[1] == 0:
        injective = True
    else:
        injective = K1.shape[1] == K2.shape[1] and la.same_span(K1, K2)
    keys = sorted(set(fimg.keys) | set(wimg.keys))
    F = fimg.aligned(keys)
    Wm = wimg.aligned(keys)
    rw = wimg.quotient_dim
    surjective = fimg.quotient_dim == rw and (la.rank(np.hstack([F, Wm])) == rw if keys else True)
    return IsoReport(n, flag.dimension, won.dimension, fimg.quotient_dim, wimg.quotient_dim, injective, surjective), won


def phi_check(g, lam, n, chain=True):
    """Phi in degree n for G^e, with toprow/telescope witness chains."""
    G = CentralizerGroup.principal(g)
    rep, won = _iso(G, lam, n, None)
    if chain and n >= 1:
        rep.chain = principal_chain(G, won)
    return rep


def principal_chain(G, won):
    """Every entry function of degree n equals Phi'(z) for a solved z."""
    Vtop = won.constituents[0][1] if won.constituents[0][0] == won.top else highest_weight_rep(G.g, won.top)
    U = TruncatedUEA.for_modules(G, *[V for _, V in won.constituents])
    top_rows = None
    total = 0
    ok = True
    for mu, V in won.constituents:
        pairs = [(V.unit(i), V.unit(j)) for i in range(V.dim) for j in range(V.dim)]
        ws = solve_toprow_pairs(U, V, pairs)
        zs = solve_telescope(U, V, ws, Vtop)
        table = G.entry_functions(V)
        got = G.functions_of(Vtop, Vtop.unit(0), zs)
        for (i, j), f in zip([(i, j) for i in range(V.dim) for j in range(V.dim)], got):
            if table.get((i, j), MultiPoly(G.nvars)) != f:
                ok = False
        total += len(pairs)
    return {"entries": total, "toprow_then_telescope": ok}


def psi_check(g, lam, n, rx, h, chain=True):
    """Psi in degree n for G^x = C x A with translate ``h``."""
    G = CentralizerGroup(rx.a_part)
    Vlam = highest_weight_rep(g, validate_lambda(g.rs, lam))
    if not general_flag_test(Vlam, rx.I, h):
        raise ValueError("translate h is not general for lambda")
    rep, won = _iso(G, lam, n, h)
    if chain and n == 1:
        rep.chain = general_chain(G, won, Vlam, h)
    return rep


def general_chain(G, won, Vlam, h):
    """Degree-1 surjectivity through toprowgeneral, leviirreps, telescopegeneral, bijection."""
    rs = G.g.rs
    I = G.I
    U = TruncatedUEA.for_modules(G, *[V for _, V in won.constituents])
    blocks_lam = restrict_to_levi(Vlam, I)
    phi = flag_functional(Vlam, h)
    total, ok, missing = 0, True, 0
    for mu, V in won.constituents:
        table = G.entry_functions(V)
        for blk in restrict_to_levi(V, I):
            target = find_dominating_block(rs, blocks_lam, blk)
            if target is None:
                missing += 1
                ok = False
                continue
            phi_loc = target.project_functional(phi)
            for a in range(blk.dim):
                wstar_loc = la.zeros(blk.dim)
                wstar_loc[a] = Fraction(1)
                us = [la.identity(blk.dim)[:, b] for b in range(blk.dim)]
                v1 = solve_toprow_general(U, V, blk, wstar_loc, us)
                y = solve_telescope_general(U, V, blk, v1, Vlam, target)
                z = solve_bijection_general(U, Vlam, target, phi_loc, y)
                zg = [la.matmul(target.basis, zz) for zz in z]
                got = G.functions_of(Vlam, phi, zg)
                wstar = blk.dual[a]
                want = G.functions_of(V, wstar, [blk.basis[:, b] for b in range(blk.dim)])
                total += blk.dim
                if any(x != y for x, y in zip(got, want)):
                    ok = False
        del table
    return {"entries": total, "levi_chain": ok, "blocks_without_dominating_rho": missing}


# -- multiplication ------------------------------------------------------------------

def multiply_sections(Vmu, u1, Vnu, u2, proj=None):
    """(v_mu^* (x) u1) . (v_nu^* (x) u2) = v_{mu+nu}^* (x) P(u1 (x) u2)."""
    P = proj or cartan_projection(Vmu, Vnu)
    return P.target, P.apply(u1, u2)


def topmult_on_words(Vmu, u1, Vnu, u2, words, proj=None, functionals=None):
    """Pointwise check on group words g: phi1(g u1) phi2(g u2) = phi(g u)."""
    Vt, u = multiply_sections(Vmu, u1, Vnu, u2, proj)
    for w in words:
        a = w.act(Vmu, u1)[0]
        b = w.act(Vnu, u2)[0]
        c = w.act(Vt, u)[0]
        if a * b != c:
            return False
    return True


def topmult_symbolic(G, Vmu, u1, Vnu, u2, proj=None):
    Vt, u = multiply_sections(Vmu, u1, Vnu, u2, proj)
    f1 = G.function(Vmu, Vmu.unit(0), u1)
    f2 = G.function(Vnu, Vnu.unit(0), u2)
    return f1 * f2 == G.function(Vt, Vt.unit(0), u)


def topmult_table(G, proj, words=()):
    """All basis pairs at once: (i, j) of the first failure, or None.

    Checks phi(g u_i) phi(g w_j) = phi(g P(u_i (x) w_j)) on each word and
    as polynomials on G.
    """
    Vmu, Vnu = proj.source
    Vt = proj.target
    n2 = Vnu.dim
    for w in words:
        r1 = w.matrix(Vmu)[0, :]
        r2 = w.matrix(Vnu)[0, :]
        rt = la.vecmat(w.matrix(Vt)[0, :], proj.matrix)
        for a in range(Vmu.dim):
            for b in range(n2):
                if r1[a] * r2[b] != rt[a * n2 + b]:
                    return (a, b)
    f1 = G.functions_of(Vmu, Vmu.unit(0), [Vmu.unit(a) for a in range(Vmu.dim)])
    f2 = G.functions_of(Vnu, Vnu.unit(0), [Vnu.unit(b) for b in range(n2)])
    ft = G.functions_of(Vt, Vt.unit(0), [proj.matrix[:, c] for c in range(proj.matrix.shape[1])])
    for a in range(Vmu.dim):
        for b in range(n2):
            if f1[a] * f2[b] != ft[a * n2 + b]:
                return (a, b)
    return None


def random_words(g, count, seed=0, length=5):
    rng = random.Random(seed)
    return [random_word(g, rng, length) for _ in range(count)]


def ideal_closed_under_products(G, lam, h=None):
    """I_1 . (degree-1 sections) lands in I_2 on the flag side."""
    g = G.g
    V1 = highest_weight_rep(g, lam)
    P = cartan_projection(V1, V1)
    V2 = P.target
    f1 = restrict_to_subgroup(graded_component(g, lam, 1, "flag"), G, h)
    f2 = restrict_to_subgroup(graded_component(g, lam, 2, "flag"), G, h)
    K1 = f1.ideal_basis()
    phi2 = flag_functional(V2, h)
    for c in range(K1.shape[1]):
        for j in range(V1.dim):
            u = P.apply(K1[:, c], V1.unit(j))
            if not G.function(V2, phi2, u).is_zero():
                return False
    del f2
    return True
