"""Root systems, weights and Weyl groups of the simple types at desk scale.

Conventions: ``cartan[i][j] = <alpha_i, alpha_j^vee>``, so row ``i`` of the
Cartan matrix is the simple root ``alpha_i`` written in fundamental-weight
coordinates, and ``alpha_j(h_i) = cartan[j][i]``.  Weights are stored in
fundamental-weight coordinates, roots in root coordinates.  Indices are
0-based internally; the CLI and reports use 1-based subsets.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

MAX_RANK = 6

_VALID = {
    "A": range(1, MAX_RANK + 1),
    "B": range(2, MAX_RANK + 1),
    "C": range(2, MAX_RANK + 1),
    "D": range(4, MAX_RANK + 1),
    "E": (6,),
    "F": (4,),
    "G": (2,),
}

# Weyl-group exponents m_i; the principal grading puts g^e in degrees 2*m_i
EXPONENTS = {
    ("A", l): tuple(range(1, l + 1)) for l in _VALID["A"]
}
EXPONENTS.update({(t, l): tuple(range(1, 2 * l, 2)) for t in "BC" for l in _VALID[t]})
EXPONENTS.update({("D", l): tuple(sorted(list(range(1, 2 * l - 2, 2)) + [l - 1])) for l in _VALID["D"]})
EXPONENTS[("E", 6)] = (1, 4, 5, 7, 8, 11)
EXPONENTS[("F", 4)] = (1, 5, 7, 11)
EXPONENTS[("G", 2)] = (1, 5)


def cartan_matrix(type_letter, rank):
    if type_letter not in _VALID or rank not in _VALID[type_letter]:
        raise ValueError(f"unsupported simple type {type_letter}{rank}")
    l = rank
    C = [[0] * l for _ in range(l)]
    for i in range(l):
        C[i][i] = 2

    def link(i, j):
        C[i][j] = C[j][i] = -1

    if type_letter in "ABC":
        for i in range(l - 1):
            link(i, i + 1)
        if type_letter == "B":
            C[l - 2][l - 1] = -2
        elif type_letter == "C":
            C[l - 1][l - 2] = -2
    elif type_letter == "D":
        for i in range(l - 2):
            link(i, i + 1)
        link(l - 3, l - 1)
    elif type_letter == "E":
        # Bourbaki labelling: 1-3-4-5-6 with 2 attached to 4
        for i, j in ((0, 2), (2, 3), (3, 4), (4, 5), (1, 3)):
            link(i, j)
    elif type_letter == "F":
        link(0, 1)
        link(2, 3)
        C[1][2], C[2][1] = -2, -1
    elif type_letter == "G":
        C[0][1], C[1][0] = -1, -3
    return C


def _symmetrizer(C):
    """d_i = (alpha_i, alpha_i)/2 with ``C[i][j] d_j`` symmetric, min d = 1."""
    l = len(C)
    d = [None] * l
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(l):
            if j != i and C[i][j] != 0 and d[j] is None:
                # C[i][j] d_j = C[j][i] d_i
                d[j] = Fraction(C[j][i]) * d[i] / C[i][j]
                stack.append(j)
    m = min(d)
    return [x / m for x in d]


@dataclass(frozen=True)
class Weight:
    coords: tuple
    in_root_lattice: bool

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)),
                      self.in_root_lattice and other.in_root_lattice)

    def scale(self, n):
        return Weight(tuple(n * a for a in self.coords), self.in_root_lattice or n == 0)

    def is_dominant(self):
        return all(c >= 0 for c in self.coords)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


class WeylElement:
    """A Weyl group element: a (reduced) word and its action on weight coordinates.

    Equality and hashing use the matrix only, since words are not canonical.
    """

    def __init__(self, word, matrix):
        self.word = tuple(word)
        self.matrix = np.asarray(matrix, dtype=np.int64)
        self.matrix.setflags(write=False)
        self._key = self.matrix.tobytes()

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"WeylElement(word={self.word})"

    def act(self, weight_coords):
        return tuple(int(x) for x in self.matrix @ np.asarray(weight_coords, dtype=np.int64))


class RootSystem:
    """Combinatorial data of a simple root system."""

    def __init__(self, type_letter, rank):
        self.type_letter = type_letter
        self.rank = rank
        self.cartan = tuple(tuple(r) for r in cartan_matrix(type_letter, rank))
        self.sym = tuple(_symmetrizer(self.cartan))
        l = rank
        # Gram matrix of the simple roots
        self.gram = tuple(
            tuple(Fraction(self.cartan[i][j]) * self.sym[j] for j in range(l)) for i in range(l)
        )
        self.positive_roots = self._root_strings()
        self.root_index = {r: k for k, r in enumerate(self.positive_roots)}

    def __repr__(self):
        return f"RootSystem({self.type_letter}{self.rank})"

    @property
    def name(self):
        return f"{self.type_letter}{self.rank}"

    # -- coordinates -------------------------------------------------------
    @cached_property
    def cartan_array(self):
        return np.array(self.cartan, dtype=np.int64)

    @cached_property
    def _inverse_cartan(self):
        from .linalg import qmat, solve, identity
        return solve(qmat(self.cartan), identity(self.rank))

    def to_root_coords(self, weight_coords):
        """Weight coordinates -> (rational) root coordinates."""
        Ci = self._inverse_cartan
        l = self.rank
        # w = c C  =>  c = w C^{-1}
        return tuple(sum(Fraction(weight_coords[i]) * Ci[i, j] for i in range(l)) for j in range(l))

    def to_weight_coords(self, root_coords):
        l = self.rank
        return tuple(sum(root_coords[i] * self.cartan[i][j] for i in range(l)) for j in range(l))

    def weight(self, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"weight needs {self.rank} coordinates")
        rc = self.to_root_coords(coords)
        return Weight(coords, all(x.denominator == 1 for x in rc))

    def weight_from_root_coords(self, root_coords):
        return self.weight(self.to_weight_coords(root_coords))

    def inner(self, a, b):
        """Invariant form on weights given in weight coordinates."""
        ra, rb = self.to_root_coords(a), self.to_root_coords(b)
        l = self.rank
        return sum(ra[i] * self.gram[i][j] * rb[j] for i in range(l) for j in range(l))

    def root_inner(self, a, b):
        l = self.rank
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(l) for j in range(l))

    def pairing(self, weight_coords, root):
        """<lambda, beta^vee> for a root given in root coordinates."""
        l = self.rank
        lam_beta = sum(Fraction(weight_coords[j]) * root[j] * self.sym[j] for j in range(l))
        return 2 * lam_beta / self.root_inner(root, root)

    # -- roots -------------------------------------------------------------
    def _root_strings(self):
        l = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
        roots = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                wc = self.to_weight_coords(beta)
                for i in range(l):
                    # p = how far the alpha_i-string extends below beta
                    p = 0
                    cur = list(beta)
                    while True:
                        cur[i] -= 1
                        if tuple(cur) in roots:
                            p += 1
                        else:
                            break
                    q = p - wc[i]
                    if q > 0:
                        new = tuple(b + (1 if j == i else 0) for j, b in enumerate(beta))
                        if new not in roots:
                            roots.add(new)
                            nxt.append(new)
            layer = nxt
        return tuple(sorted(roots, key=lambda r: (sum(r), tuple(-x for x in r))))

    @staticmethod
    def height(root):
        return sum(root)

    @cached_property
    def highest_root(self):
        return max(self.positive_roots, key=sum)

    @cached_property
    def rho(self):
        return tuple([1] * self.rank)

    def simple_root(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def is_root(self, r):
        r = tuple(r)
        return r in self.root_index or tuple(-x for x in r) in self.root_index

    def subsystem_roots(self, I):
        """Positive roots supported on the simple indices in ``I``."""
        I = set(I)
        return tuple(r for r in self.positive_roots if all(c == 0 for j, c in enumerate(r) if j not in I))

    def components(self, I):
        """Connected components of the Dynkin subdiagram on ``I``."""
        I = sorted(I)
        seen, comps = set(), []
        for s in I:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in I:
                    if j not in seen and self.cartan[i][j] != 0:
                        seen.add(j)
                        stack.append(j)
            comps.append(tuple(sorted(comp)))
        return comps

    # -- Weyl group --------------------------------------------------------
    @cached_property
    def reflections(self):
        l = self.rank
        mats = []
        for i in range(l):
            S = np.eye(l, dtype=np.int64)
            # s_i(w) = w - w_i alpha_i, alpha_i = row i of C in weight coords
            S[:, i] -= self.cartan_array[i]
            mats.append(S)
        return mats

    def element(self, word):
        M = np.eye(self.rank, dtype=np.int64)
        for i in word:
            M = M @ self.reflections[i]
        return WeylElement(word, M)

    def identity(self):
        return WeylElement((), np.eye(self.rank, dtype=np.int64))

    def reflect_root(self, w, root):
        """Action of ``w`` on a root given in root coordinates."""
        wc = w.act(self.to_weight_coords(root))
        return tuple(int(x) for x in self.to_root_coords(wc))

    def length(self, w):
        return sum(1 for r in self.positive_roots if sum(self.reflect_root(w, r)) < 0)

    def inverse(self, w):
        return self.element(tuple(reversed(w.word)))

    def dominant_conjugate(self, coords):
        coords = list(coords)
        while True:
            i = next((k for k, c in enumerate(coords) if c < 0), None)
            if i is None:
                return tuple(coords)
            c = coords[i]
            coords = [coords[j] - c * self.cartan[i][j] for j in range(self.rank)]

    def orbit(self, coords):
        start = tuple(coords)
        seen = {start}
        stack = [start]
        while stack:
            w = stack.pop()
            for i in range(self.rank):
                if w[i] == 0:
                    continue
                v = tuple(w[j] - w[i] * self.cartan[i][j] for j in range(self.rank))
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen


def build_root_system(type_letter, rank):
    """Validated constructor; raises ``ValueError`` for unsupported pairs."""
    type_letter = str(type_letter).upper()
    try:
        rank = int(rank)
    except (TypeError, ValueError):
        raise ValueError(f"rank must be an integer, got {rank!r}") from None
    if type_letter not in _VALID:
        raise ValueError(f"unknown type letter {type_letter!r}")
    if rank not in _VALID[type_letter]:
        raise ValueError(f"type {type_letter} does not exist in rank {rank} (supported: {list(_VALID[type_letter])})")
    return RootSystem(type_letter, rank)


def dominates(rs, lam, mu):
    """mu <= lam in the dominance order."""
    diff = tuple(a - b for a, b in zip(lam.coords, mu.coords))
    rc = rs.to_root_coords(diff)
    return all(x.denominator == 1 and x >= 0 for x in rc)


def dominant_weights_below(rs, lam):
    """All dominant mu <= lam, for dominant lam in the root lattice.

    Grows the set from ``lam`` by subtracting positive roots while staying
    dominant; every dominant weight below is reached this way.
    """
    if not lam.is_dominant():
        raise ValueError(f"weight {lam} is not dominant")
    if not lam.in_root_lattice:
        raise ValueError(f"weight {lam} is not in the root lattice")
    roots_w = [rs.to_weight_coords(r) for r in rs.positive_roots]
    found = {lam.coords}
    stack = [lam.coords]
    while stack:
        nu = stack.pop()
        for r in roots_w:
            mu = tuple(a - b for a, b in zip(nu, r))
            if all(c >= 0 for c in mu) and mu not in found:
                found.add(mu)
                stack.append(mu)
    out = [rs.weight(c) for c in found]
    # highest first: by depth below lam
    return sorted(out, key=lambda w: (sum(rs.to_root_coords(tuple(a - b for a, b in zip(lam.coords, w.coords)))), w.coords))


def weyl_group(rs):
    """All elements of W with shortest words, ordered by (length, word)."""
    cached = rs.__dict__.get("_weyl_group")
    if cached is not None:
        return cached
    e = rs.identity()
    seen = {e: e}
    layer = [e]
    while layer:
        nxt = []
        for w in layer:
            for i in range(rs.rank):
                v = WeylElement(w.word + (i,), w.matrix @ rs.reflections[i])
                if v not in seen:
                    seen[v] = v
                    nxt.append(v)
        layer = nxt
    out = sorted(seen, key=lambda w: (len(w.word), w.word))
    rs.__dict__["_weyl_group"] = out
    return out


def longest_element(rs, I):
    """Longest element w_I of the parabolic subgroup W_I."""
    I = sorted(set(I))
    w = rs.identity()
    while True:
        # extend while some s_i (i in I) increases length: w alpha_i > 0
        i = next((i for i in I if sum(rs.reflect_root(w, rs.simple_root(i))) > 0), None)
        if i is None:
            return w
        w = WeylElement(w.word + (i,), w.matrix @ rs.reflections[i])


def parabolic_longest_test(rs, w):
    """Return I if ``w`` is the longest element of some W_I, else ``None``.

    Criterion: every w^{-1} alpha_i is a positive root or a negative simple
    root; I collects the i of the second kind.
    """
    winv = rs.inverse(w)
    I = []
    for i in range(rs.rank):
        r = rs.reflect_root(winv, rs.simple_root(i))
        if all(c >= 0 for c in r):
            continue
        if sum(r) == -1:
            I.append(i)
            continue
        return None
    I = tuple(I)
    if longest_element(rs, I) != w:
        return None
    return I


def weyl_dimension(rs, lam_coords):
    """Weyl dimension formula."""
    num = Fraction(1)
    rho = rs.rho
    for beta in rs.positive_roots:
        lr = tuple(a + b for a, b in zip(lam_coords, rho))
        num *= rs.pairing(lr, beta) / rs.pairing(rho, beta)
    assert num.denominator == 1
    return int(num)


def freudenthal_multiplicities(rs, lam_coords):
    """Weight multiplicities of V_lambda by Freudenthal's recursion.

    Returns ``{weight coords: multiplicity}`` over all weights.
    """
    lam = rs.weight(lam_coords)
    rho = rs.rho
    # dominant weights mu <= lam in lam's coset of the root lattice
    roots_w = [rs.to_weight_coords(r) for r in rs.positive_roots]
    dom = {lam.coords}
    stack = [lam.coords]
    while stack:
        nu = stack.pop()
        for r in roots_w:
            mu = tuple(a - b for a, b in zip(nu, r))
            if all(c >= 0 for c in mu) and mu not in dom:
                dom.add(mu)
                stack.append(mu)

    def depth(mu):
        return sum(rs.to_root_coords(tuple(a - b for a, b in zip(lam.coords, mu))))

    lr = tuple(a + b for a, b in zip(lam.coords, rho))
    norm_lr = rs.inner(lr, lr)
    mult = {}
    for mu in sorted(dom, key=depth):
        if mu == lam.coords:
            mult[mu] = 1
            continue
        total = Fraction(0)
        for beta, bw in zip(rs.positive_roots, roots_w):
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, bw))
                dc = rs.dominant_conjugate(nu)
                m = mult.get(dc, 0)
                if dc not in dom or m == 0:
                    break
                total += m * rs.inner(nu, bw)
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = norm_lr - rs.inner(mr, mr)
        val = 2 * total / denom
        assert val.denominator == 1
        mult[mu] = int(val)
    out = {}
    for mu, m in mult.items():
        if m:
            for nu in rs.orbit(mu):
                out[nu] = m
    return out


def subsets(l):
    """All subsets of range(l), ordered by size then lexicographically."""
    out = []
    for bits in product((0, 1), repeat=l):
        out.append(tuple(i for i in range(l) if bits[i]))
    return sorted(out, key=lambda s: (len(s), s))
