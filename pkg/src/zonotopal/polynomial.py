"""Sparse multivariate polynomials and Laurent polynomials with exact coefficients.

Both types map exponent tuples to nonzero coefficients.  ``Polynomial`` has
rational coefficients and nonnegative exponents; ``LaurentPolynomial`` allows
negative exponents and is the carrier for the character ring.
"""

from fractions import Fraction
from itertools import product
import math

from .errors import UsageError


def _clean(terms):
    return {e: c for e, c in terms.items() if c}


class _Terms:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = _clean(dict(terms or {}))
        for e in self.terms:
            if len(e) != nvars:
                raise UsageError(f"exponent {e} does not have {nvars} entries")

    # construction helpers -------------------------------------------------
    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exponent, c=1):
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def _coerce(self, other):
        if isinstance(other, _Terms):
            if other.nvars != self.nvars:
                raise UsageError("variable count mismatch")
            return other
        return type(self).constant(self.nvars, other)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return type(self)(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return type(self)(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = type(self).constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, _Terms):
            return self.nvars == other.nvars and self.terms == other.terms
        return self == type(self).constant(self.nvars, other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def coefficient(self, exponent):
        return self.terms.get(tuple(exponent), 0)

    def __call__(self, point):
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * (Fraction(x) ** k)
            total += t
        return total

    def __repr__(self):
        return f"{type(self).__name__}({self.nvars}, {self.to_str()!r})"

    def to_str(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = ["x", "y", "z"] if self.nvars <= 3 else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = to_str


class Polynomial(_Terms):
    """Polynomial with rational coefficients in ``nvars`` variables."""

    __slots__ = ()

    def __init__(self, nvars, terms=None):
        super().__init__(nvars, {e: Fraction(c) for e, c in dict(terms or {}).items()})
        if any(k < 0 for e in self.terms for k in e):
            raise UsageError("negative exponent in a Polynomial")

    @classmethod
    def linear_form(cls, a):
        """The element ``sum a_i x_i`` of the symmetric algebra."""
        d = len(a)
        return cls(d, {tuple(int(i == j) for j in range(d)): ai for i, ai in enumerate(a)})

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = out.get(tuple(f), 0) + c * e[i]
        return Polynomial(self.nvars, out)

    def directional(self, a):
        """Derivative in direction ``a``."""
        out = Polynomial(self.nvars)
        for i, ai in enumerate(a):
            if ai:
                out = out + ai * self.diff(i)
        return out

    def derivative(self, alpha):
        p = self
        for i, k in enumerate(alpha):
            for _ in range(k):
                p = p.diff(i)
        return p

    def shift(self, v):
        """The polynomial ``x -> self(x - v)``."""
        subs = [Polynomial.variable(self.nvars, i) - v[i] for i in range(self.nvars)]
        return self.compose(subs)

    def compose(self, polys):
        """Substitute ``x_i -> polys[i]`` (all in a common ring)."""
        if len(polys) != self.nvars:
            raise UsageError("wrong number of substitutions")
        m = polys[0].nvars if polys else 0
        out = Polynomial(m)
        cache = {}
        for e, c in self.terms.items():
            t = Polynomial.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = polys[i] ** k
                    t = t * cache[key]
            out = out + t
        return out

    def restrict(self, basis):
        """Restrict to the span of ``basis``: ``s -> self(sum s_j basis_j)``."""
        r = len(basis)
        subs = []
        for i in range(self.nvars):
            subs.append(Polynomial(r, {tuple(int(j == k) for k in range(r)): b[i]
                                       for j, b in enumerate(basis) if b[i]}))
        return self.compose(subs)

    def homogeneous_part(self, k):
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k})


class LaurentPolynomial(_Terms):
    """Element of ``Q[x_1^{±1}, ..., x_d^{±1}]`` (integer coefficients in practice)."""

    __slots__ = ()

    @classmethod
    def character(cls, a):
        """The monomial ``x^a``."""
        return cls(len(a), {tuple(a): 1})

    @classmethod
    def nabla(cls, a):
        """``1 - x^a``, the symbol of the difference operator."""
        d = len(a)
        return cls(d, {(0,) * d: 1}) - cls.character(a)

    def to_polynomial(self):
        """Clear denominators by a monomial.  Returns ``(shift, Polynomial)``
        with ``self = x^shift * poly``."""
        if not self.terms:
            return (0,) * self.nvars, Polynomial(self.nvars)
        lo = tuple(min(e[i] for e in self.terms) for i in range(self.nvars))
        return lo, Polynomial(self.nvars, {tuple(a - b for a, b in zip(e, lo)): c
                                           for e, c in self.terms.items()})

    def substitute_one(self):
        """Value at ``x = (1, ..., 1)``."""
        return sum(self.terms.values())

    def support_box(self):
        if not self.terms:
            return None
        return tuple((min(e[i] for e in self.terms), max(e[i] for e in self.terms))
                     for i in range(self.nvars))


def monomials_up_to(nvars, degree):
    """All exponent tuples of total degree <= ``degree`` in graded-lex order."""
    out = []
    for total in range(degree + 1):
        for e in product(range(total + 1), repeat=nvars):
            if sum(e) == total:
                out.append(e)
    out.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return out


def count_monomials(nvars, degree):
    return math.comb(nvars + degree, nvars)
