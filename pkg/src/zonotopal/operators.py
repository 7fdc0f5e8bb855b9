"""Difference and differential operators and the membership tests for the
modules cut out by an up-set family.

``nabla`` acts on three carriers: box-truncated grid functions, quasi-polynomials
and Laurent polynomials (by multiplication with ``1 - x^a``).  Grid membership is
only a necessary condition; quasi-polynomial membership is exact.
"""

from itertools import product

from .errors import EmptyDomain, UsageError
from .polynomial import LaurentPolynomial, Polynomial
from .quasipoly import QuasiPolynomial


class GridFunction:
    """Integer-valued function on the box ``lo <= lam <= hi``."""

    def __init__(self, lo, hi, values):
        self.lo = tuple(lo)
        self.hi = tuple(hi)
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise EmptyDomain(f"empty box {self.lo}..{self.hi}")
        self.values = dict(values)

    @classmethod
    def sample(cls, f, lo, hi):
        return cls(lo, hi, {p: f(p) for p in _box(lo, hi)})

    def points(self):
        return _box(self.lo, self.hi)

    def __call__(self, lam):
        return self.values[tuple(lam)]

    def __eq__(self, other):
        return (isinstance(other, GridFunction) and self.lo == other.lo
                and self.hi == other.hi and self.values == other.values)

    __hash__ = None

    def is_zero(self):
        return not any(self.values.values())

    def restrict(self, lo, hi):
        return GridFunction(lo, hi, {p: self.values[p] for p in _box(lo, hi)})


def _box(lo, hi):
    return list(product(*(range(a, b + 1) for a, b in zip(lo, hi))))


def nabla(a, f):
    """``f(x) - f(x - a)``; for Laurent polynomials multiplication by ``1 - x^a``."""
    a = tuple(a)
    if isinstance(f, LaurentPolynomial):
        return f * LaurentPolynomial.nabla(a)
    if isinstance(f, QuasiPolynomial):
        return f.nabla(a)
    if isinstance(f, GridFunction):
        lo = tuple(l + max(x, 0) for l, x in zip(f.lo, a))
        hi = tuple(h + min(x, 0) for h, x in zip(f.hi, a))
        if any(l > h for l, h in zip(lo, hi)):
            raise EmptyDomain(f"difference along {a} leaves no valid points")
        return GridFunction(lo, hi, {p: f.values[p] - f.values[tuple(x - y for x, y in zip(p, a))]
                                     for p in _box(lo, hi)})
    raise UsageError(f"nabla is not defined on {type(f).__name__}")


def nabla_set(X, A, f):
    """Compose ``nabla_a`` over the positions ``A`` of ``X`` in index order."""
    for i in sorted(A):
        f = nabla(X[i], f)
    return f


def partial(a, p):
    if not isinstance(p, Polynomial):
        raise UsageError("derivatives act on Polynomial values")
    return p.directional(a)


def partial_set(X, A, p):
    for i in sorted(A):
        p = partial(X[i], p)
    return p


def membership_DM(X, T, f):
    """``nabla_A f = 0`` for every minimal ``A`` of ``T``.

    Exact for quasi-polynomials; for grid functions this only checks the part
    of the box where the difference is defined."""
    for A in T.minimal:
        try:
            g = nabla_set(X, A, f)
        except EmptyDomain:
            continue
        if not g.is_zero():
            return False
    return True


def membership_D(X, T, p):
    return all(partial_set(X, A, p).is_zero() for A in T.minimal)


def nabla_symbol(X, A):
    """The Laurent polynomial ``prod_{a in A} (1 - x^a)``."""
    f = LaurentPolynomial.constant(X.d, 1)
    for i in sorted(A):
        f = f * LaurentPolynomial.nabla(X[i])
    return f


def d_symbol(X, A):
    """The polynomial ``prod_{a in A} a`` (product of linear forms)."""
    p = Polynomial.constant(X.d, 1)
    for i in sorted(A):
        p = p * Polynomial.linear_form(X[i])
    return p
