"""The annihilator ideals ``J_T`` and ``J_i`` in both flavors, the Laurent
localization, and dual-module dimensions.

Laurent ideals live in ``Q[x_1..x_d, y]`` with the relation ``y x_1...x_d - 1``;
every generator is first cleared of negative exponents by a monomial, which is a
unit after localization.
"""

from .errors import UsageError
from .groebner import Ideal, colon_ideal
from .matroid import rational_subspaces, upset_L
from .operators import d_symbol, nabla_symbol
from .polynomial import LaurentPolynomial, Polynomial

FLAVORS = ("nabla", "partial")


def _inversion_relation(d):
    y = Polynomial.variable(d + 1, d)
    prod = Polynomial.constant(d + 1, 1)
    for i in range(d):
        prod = prod * Polynomial.variable(d + 1, i)
    return y * prod - 1


def laurent_to_ring(f):
    """Clear ``f`` by a monomial and embed it into ``Q[x, y]``."""
    _, p = f.to_polynomial()
    return Polynomial(p.nvars + 1, {e + (0,): c for e, c in p.terms.items()})


def ring_to_laurent(p):
    """Substitute ``y = (x_1...x_d)^{-1}``."""
    d = p.nvars - 1
    out = {}
    for e, c in p.terms.items():
        k = e[d]
        m = tuple(x - k for x in e[:d])
        out[m] = out.get(m, 0) + c
    return LaurentPolynomial(d, out)


class LaurentIdeal:
    """Ideal of the Laurent ring ``Q[x_1^{±1}..x_d^{±1}]``."""

    def __init__(self, d, gens, order="grevlex"):
        self.d = d
        self.gens = tuple(g for g in gens if not g.is_zero())
        for g in self.gens:
            if g.nvars != d:
                raise UsageError("generator lives in a different ring")
        self.order = order
        self.ring_ideal = Ideal(d + 1, [laurent_to_ring(g) for g in self.gens]
                                + [_inversion_relation(d)], order)

    def with_order(self, order):
        return LaurentIdeal(self.d, self.gens, order)

    def dimension(self):
        return self.ring_ideal.quotient_dimension()

    def contains(self, f):
        return self.ring_ideal.contains(laurent_to_ring(f))

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        return (isinstance(other, LaurentIdeal) and self.d == other.d
                and self.contains_ideal(other) and other.contains_ideal(self))

    __hash__ = None

    def __add__(self, other):
        return LaurentIdeal(self.d, self.gens + other.gens, self.order)

    def colon(self, f):
        """``(self : f)`` computed in ``Q[x, y]`` where the relation is part of the ideal."""
        C = colon_ideal(self.ring_ideal, laurent_to_ring(f))
        return LaurentIdeal(self.d, [ring_to_laurent(g) for g in C.gens], self.order)

    def is_unit(self):
        return self.ring_ideal.is_unit()

    def to_json(self):
        return [g.to_str() for g in self.gens]

    def __repr__(self):
        return f"LaurentIdeal({self.d}, [{', '.join(g.to_str() for g in self.gens)}])"


def laurent_quotient_dimension(gens, d=None, order="grevlex"):
    gens = list(gens)
    if d is None:
        d = gens[0].nvars
    return LaurentIdeal(d, gens, order).dimension()


def _dedupe(polys):
    seen = {}
    for p in polys:
        seen.setdefault(p, None)
    return list(seen)


def ideal_J(X, T, flavor="nabla", order="grevlex"):
    """``J_T``: generated by ``nabla_A`` (Laurent) or ``d_A`` (polynomial), A minimal in T."""
    if flavor == "nabla":
        return LaurentIdeal(X.d, _dedupe(nabla_symbol(X, A) for A in T.minimal), order)
    if flavor == "partial":
        return Ideal(X.d, _dedupe(d_symbol(X, A) for A in T.minimal), order)
    raise UsageError(f"unknown flavor {flavor!r}")


def complement_generators(X, subspaces):
    full = frozenset(range(X.n))
    return [full - s.indices for s in subspaces]


def ideal_J_i(X, i, flavor="nabla", order="grevlex"):
    """``J_i``: generated by the products over ``X \\ s`` for rational ``s`` with ``dim s < i``.

    ``i = d + 1`` gives the unit ideal (the subspace ``V`` contributes the empty
    product)."""
    if not 1 <= i <= X.d + 1:
        raise UsageError(f"J_i needs 1 <= i <= d + 1, got {i}")
    subs = [s for s in rational_subspaces(X) if s.dim < i]
    sets = complement_generators(X, subs)
    if flavor == "nabla":
        return LaurentIdeal(X.d, _dedupe(nabla_symbol(X, A) for A in sets), order)
    if flavor == "partial":
        return Ideal(X.d, _dedupe(d_symbol(X, A) for A in sets), order)
    raise UsageError(f"unknown flavor {flavor!r}")


def clifford_class(X):
    """``prod_{a in X} (1 - x^a)``."""
    return nabla_symbol(X, range(X.n))


def clifford_by_subsets(X):
    """The same class as the alternating subset sum ``sum_S (-1)^|S| x^{sum S}``."""
    out = {}
    for bits in range(1 << X.n):
        S = [i for i in range(X.n) if bits >> i & 1]
        e = tuple(sum(X[i][k] for i in S) for k in range(X.d))
        out[e] = out.get(e, 0) + (-1) ** len(S)
    return LaurentPolynomial(X.d, out)


def dual_dimensions(X, T=None, order="grevlex"):
    """``(dim D*_T, dim DM*_T)`` over the rationals (``T`` defaults to ``L(X)``)."""
    T = upset_L(X) if T is None else T
    return (ideal_J(X, T, "partial", order).quotient_dimension(),
            ideal_J(X, T, "nabla", order).dimension())
