"""Peterson variety membership, Bruhat-cell analysis and the G^e-orbit census.

Flag points are cosets gB of the Borel with Lie algebra b (positive roots),
g a word in nilpotent exponentials.  G^e embeds through g -> g w0 B.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg as la
from .chevrep import GroupWord, restrict_to_levi
from .polynomial import MultiPoly, scalar_is_zero
from .principal import principal_data
from .rootdata import longest_element, parabolic_longest_test, subsets, weyl_group


class TranslateSearchFailed(RuntimeError):
    pass


@dataclass
class FlagCoset:
    """The point word . B of G/B."""

    word: GroupWord

    @classmethod
    def from_centralizer(cls, g, word):
        """Image g w0 B of an element g of G^e."""
        w0 = longest_element(g.rs, range(g.rank))
        return cls(word * GroupWord.weyl_word(g, w0))

    def adjoint_inverse(self, g, x):
        """Ad(word^{-1}) x, coordinates in the Chevalley basis."""
        return self.word.inverse().act(g, x)


def symbolic_exp_word(elements, nvars=None, offset=0):
    """exp(sum_j t_j x_j) for commuting x_j as a word of exp(t_j x_j) factors."""
    nvars = len(elements) if nvars is None else nvars
    return GroupWord(tuple((MultiPoly.variable(nvars, offset + j), x) for j, x in enumerate(elements)))


def peterson_membership(g, coset, witness=False):
    """Whether Ad(g^{-1}) e lies in b plus the span of the f_i."""
    pd = principal_data(g)
    v = coset.adjoint_inverse(g, pd.e)
    bad = None
    for k in range(g.dim):
        r = g.root_of[k]
        if sum(r) <= -2 and not scalar_is_zero(v[k]):
            bad = (tuple(-x for x in r), v[k])
            break
    ok = bad is None
    if witness:
        return ok, (None if ok else {"root": list(bad[0]), "coefficient": str(bad[1])})
    return ok


def a_I_basis(g, I):
    """Basis of a_I = centralizer of e_I in n_I (height graded)."""
    return principal_data(g, I).basis


def _nilradical_basis(g, I):
    sub = set(g.rs.subsystem_roots(I))
    return [g.e_root(r) for r in g.rs.positive_roots if r not in sub]


def cell_point(g, I, extra=None):
    """Symbolic point exp(sum t_j a_j) [u-part] w_I B of the cell Pet cap N w_I B."""
    a = a_I_basis(g, I)
    extra = extra or []
    nvars = len(a) + len(extra)
    word = symbolic_exp_word(a, nvars)
    for k, y in enumerate(extra):
        word = word * GroupWord.exp(y, MultiPoly.variable(nvars, len(a) + k))
    wI = longest_element(g.rs, I)
    return FlagCoset(word * GroupWord.weyl_word(g, wI)), nvars


@dataclass
class CellFilterResult:
    subsets: list
    passing_elements: list
    weyl_order: int
    membership_by_subset: dict
    point_membership_agrees: bool

    @property
    def ok(self):
        return (
            len(self.subsets) == 2 ** len(self.subsets[-1] if self.subsets else ())
            and all(self.membership_by_subset.values())
            and self.point_membership_agrees
        )


def cell_filter(g):
    """Subsets I with Pet cap N w_I B nonempty, cross-checked two ways."""
    rs = g.rs
    W = weyl_group(rs)
    passing = []
    agree = True
    for w in W:
        I = parabolic_longest_test(rs, w)
        if I is not None:
            passing.append((w, I))
        # the T-fixed point w B lies in Pet exactly for the longest parabolic words
        mem = peterson_membership(g, FlagCoset(GroupWord.weyl_word(g, w)))
        agree = agree and (mem == (I is not None))
    found = sorted({I for _, I in passing}, key=lambda s: (len(s), s))
    membership = {}
    for I in found:
        coset, _ = cell_point(g, I)
        membership[I] = peterson_membership(g, coset)
    res = CellFilterResult(found, passing, len(W), membership, agree)
    return res


@dataclass
class CellCheck:
    I: tuple
    contains: bool
    u_freedom: bool
    linear_condition: bool
    flips_to_low_heights: bool
    non_centralizing_fail: bool
    tangent_dim: int
    dim_a: int

    @property
    def ok(self):
        return self.contains and self.u_freedom and self.linear_condition and self.flips_to_low_heights and self.non_centralizing_fail


def cell_intersection_check(g, I):
    rs = g.rs
    I = tuple(sorted(set(I)))
    pd_I = principal_data(g, I)
    a = pd_I.basis
    # (superset) A_I w_I B in Pet, also with a U_I factor in front of w_I
    coset, _ = cell_point(g, I)
    contains = peterson_membership(g, coset)
    u_basis = _nilradical_basis(g, I)
    coset_u, _ = cell_point(g, I, extra=u_basis)
    u_free = peterson_membership(g, coset_u)
    # (subset) x in n_I with x . e_I in the allowed part forces [x, e_I] = 0
    sub = rs.subsystem_roots(I)
    nI = [g.e_root(r) for r in sub]
    if nI:
        M = np.column_stack([g.bracket(x, pd_I.e) for x in nI])
        K = la.nullspace(M)
        kernel = [sum((K[k, c] * nI[k] for k in range(len(nI))), g.zero()) for c in range(K.shape[1])]
        if a and kernel:
            linear = la.same_span(np.column_stack(a), np.column_stack(kernel))
        else:
            linear = not a and not kernel
    else:
        linear = not a
    # w_I sends the height >= 2 part of l_I to heights <= -2
    wI = GroupWord.weyl_word(g, longest_element(rs, I))
    flips = True
    for r in sub:
        if sum(r) < 2:
            continue
        v = wI.act(g, g.e_root(r))
        for k in range(g.dim):
            if v[k] != 0 and sum(g.root_of[k]) > -2:
                flips = False
    # points exp(e_beta) w_I B with [e_beta, e_I] != 0 are not in Pet
    fails = True
    for r, x in zip(sub, nI):
        if la.is_zero(g.bracket(x, pd_I.e)):
            continue
        pt = FlagCoset(GroupWord.exp(x, 1) * wI)
        if peterson_membership(g, pt):
            fails = False
    return CellCheck(I, contains, u_free, linear, flips, fails, len(a) + len(u_basis), len(a))


def pi_I_image(g, I):
    """Basis of pi_I(g^e): the n_I components of a basis of g^e."""
    I = tuple(sorted(set(I)))
    pd = principal_data(g)
    sub = set(g.rs.subsystem_roots(I))
    proj = [g.root_space_part(x, lambda r, sub=sub: r in sub) for x in pd.basis]
    if not proj:
        return [], True, True
    M = np.column_stack(proj)
    piv = la.column_space_basis(M)
    basis = [proj[k] for k in piv]
    eI = principal_data(g, I).e
    commutes = all(la.is_zero(g.bracket(x, eI)) for x in basis)
    a = a_I_basis(g, I)
    inside = True
    if basis:
        inside = bool(a) and all(la.in_span(np.column_stack(a), x) for x in basis)
    return basis, commutes, inside


@dataclass
class CensusRow:
    I: tuple
    w_len: int
    dim_a: int
    dim_pi: int
    finite: bool
    orbit_count: object
    not_simple: bool = False
    checks: dict = field(default_factory=dict)

    def subset_label(self):
        return "{" + ",".join(str(i + 1) for i in self.I) + "}"

    def csv_row(self):
        return [self.subset_label(), self.w_len, self.dim_a, self.dim_pi,
                "true" if self.finite else "false", self.orbit_count]


CSV_HEADER = ["I", "w_len", "dim_a_I", "dim_pi_I", "finite", "orbit_count"]


def levi_not_simple(rs, I):
    """[l_I, l_I] is not simple: two or more Dynkin components."""
    return len(rs.components(I)) >= 2


def orbit_census(g, only=None):
    rs = g.rs
    rows = []
    for I in subsets(rs.rank):
        if only is not None and I not in only:
            continue
        dim_a = len(a_I_basis(g, I))
        basis, commutes, inside = pi_I_image(g, I)
        dim_pi = len(basis)
        finite = dim_pi == dim_a
        w = longest_element(rs, I)
        rows.append(CensusRow(I, rs.length(w), dim_a, dim_pi, finite, 1 if finite else "inf",
                              levi_not_simple(rs, I), {"pi_commutes_e_I": commutes, "pi_inside_a_I": inside}))
    return rows


def type_a_criterion_holds(rs, rows):
    """Infinite rows are exactly the I with [l_I, l_I] not simple (type A)."""
    return all((not r.finite) == r.not_simple for r in rows)


# -- general translates ----------------------------------------------------------

def general_flag_test(V, I, word, values=False):
    """(h . v_lam^*)(w^alpha_rho) != 0 for every Levi block of V."""
    blocks = restrict_to_levi(V, I)
    phi = word.act_dual(V, V.unit(0))
    vals = [np.dot(phi, b.highest_vector) for b in blocks]
    ok = all(v != 0 for v in vals)
    return (ok, vals) if values else ok


def random_word(g, rng, length=6, kinds=("e", "f")):
    factors = []
    for _ in range(length):
        kind = rng.choice(kinds)
        i = rng.randrange(g.rank)
        num = rng.choice([-3, -2, -1, 1, 2, 3])
        den = rng.choice([1, 2, 3])
        x = g.e(i) if kind == "e" else g.f(i)
        factors.append((Fraction(num, den), x))
    return GroupWord(tuple(factors))


def search_general_translate(V, I, seed=0, budget=200, length=6):
    """Seeded random search for a general translate h; returns (word, attempts)."""
    rng = random.Random(seed)
    for attempt in range(1, budget + 1):
        word = random_word(V.g, rng, length)
        if general_flag_test(V, I, word):
            return word, attempt
    raise TranslateSearchFailed(f"no general h found within budget ({budget} words)")
