"""Sparse multivariate (Laurent) polynomials with rational coefficients."""
from fractions import Fraction
from numbers import Rational


class MultiPoly:
    """Polynomial stored as ``{exponent tuple: Fraction}``.

    Exponents may be negative, which is how torus characters are carried.
    Instances are treated as immutable; every operation returns a new one.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c != 0:
                    mono = tuple(mono)
                    if len(mono) != nvars:
                        raise ValueError(f"monomial {mono} has wrong arity for {nvars} variables")
                    clean[mono] = Fraction(c)
        self.terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i, power=1):
        mono = [0] * nvars
        mono[i] = power
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def gens(cls, nvars):
        return [cls.variable(nvars, i) for i in range(nvars)]

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(len(exps), {tuple(exps): coeff})

    # -- helpers -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Rational)):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0,) * self.nvars}

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), Fraction(0))

    def monomials(self):
        return sorted(self.terms)

    def degree(self, weights=None):
        """Maximal (weighted) total degree; ``-1`` for the zero polynomial."""
        if not self.terms:
            return -1
        w = weights or (1,) * self.nvars
        return max(sum(a * b for a, b in zip(m, w)) for m in self.terms)

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        return MultiPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                return MultiPoly(self.nvars)
            return MultiPoly(self.nvars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- evaluation --------------------------------------------------------
    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        if len(point) != self.nvars:
            raise ValueError("wrong number of arguments")
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for x, a in zip(point, m):
                if a:
                    term = term * (Fraction(x) ** a)
            total += term
        return total

    def substitute(self, values):
        """Substitute polynomials/numbers for variables (non-negative exponents)."""
        result = 0
        for m, c in self.terms.items():
            term = c
            for v, a in zip(values, m):
                if a < 0:
                    raise ValueError("cannot substitute into a negative power")
                if a:
                    term = term * (v ** a)
            result = result + term
        return result

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            vs = "*".join(
                f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(m) if a
            )
            if not vs:
                parts.append(str(c))
            elif c == 1:
                parts.append(vs)
            elif c == -1:
                parts.append("-" + vs)
            else:
                parts.append(f"{c}*{vs}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return [[list(m), str(self.terms[m])] for m in sorted(self.terms)]


def scalar_is_zero(x):
    """Zero test for anything that may appear as a vector entry."""
    if isinstance(x, MultiPoly):
        return x.is_zero()
    return x == 0
