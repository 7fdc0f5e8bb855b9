"""Buchberger's algorithm over the rationals.

Polynomials are plain dicts ``{exponent tuple: Fraction}`` internally; the
public helpers accept and return :class:`Polynomial`.  Orders are given by a
name (``grevlex``, ``lex``) or ``("block", k)`` for the elimination order with
the first ``k`` variables forming the larger block (grevlex inside each block).
"""

from fractions import Fraction
from itertools import product

from .errors import UsageError
from .linalg import INFINITE
from .polynomial import Polynomial

ORDERS = ("grevlex", "lex")


def _grevlex(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def order_key(order):
    if order == "grevlex":
        return _grevlex
    if order == "lex":
        return lambda e: e
    if isinstance(order, tuple) and order[0] == "block":
        k = order[1]
        return lambda e: (_grevlex(e[:k]), _grevlex(e[k:]))
    raise UsageError(f"unknown term order {order!r}")


def _lm(p, key):
    return max(p, key=key)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_scaled(p, q, c, shift):
    """``p - c * x^shift * q`` in place."""
    for e, v in q.items():
        m = tuple(a + b for a, b in zip(e, shift))
        w = p.get(m, 0) - c * v
        if w:
            p[m] = w
        else:
            p.pop(m, None)


def _monic(p, key):
    c = p[_lm(p, key)]
    return {e: v / c for e, v in p.items()}


def normal_form(f, G, key):
    """Full reduction of ``f`` by the list ``G`` of (lm, poly) pairs."""
    p = dict(f)
    r = {}
    while p:
        m = _lm(p, key)
        c = p[m]
        for lm, g in G:
            if _divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                _sub_scaled(p, g, c / g[lm], shift)
                break
        else:
            r[m] = c
            del p[m]
    return r


def _spoly(f, g, lf, lg):
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    out = {}
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    for e, v in f.items():
        out[tuple(a + b for a, b in zip(e, sf))] = v / f[lf]
    _sub_scaled(out, g, 1 / g[lg], sg)
    return out


def buchberger(polys, order="grevlex"):
    """Reduced Groebner basis of the dict polynomials ``polys``.

    Pairs are taken by smallest lcm under ``(total degree, lex)``; the product
    and chain criteria skip pairs that are known to reduce to zero.
    """
    key = order_key(order)
    G = []  # list of (lm, poly)
    pairs = set()

    def add(h):
        h = _monic(h, key)
        lm = _lm(h, key)
        idx = len(G)
        G.append((lm, h))
        for i in range(idx):
            pairs.add((i, idx))

    for f in polys:
        f = {e: Fraction(c) for e, c in f.items() if c}
        h = normal_form(f, G, key)
        if h:
            add(h)
    while pairs:
        i, j = min(pairs, key=lambda ij: _pair_rank(G, ij))
        pairs.discard((i, j))
        li, lj = G[i][0], G[j][0]
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not _divides(G[k][0], lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chain = True
                break
        if chain:
            continue
        h = normal_form(_spoly(G[i][1], G[j][1], li, lj), G, key)
        if h:
            add(h)
    return _reduce_basis([g for _, g in G], key)


def _pair_rank(G, ij):
    i, j = ij
    lcm = tuple(max(a, b) for a, b in zip(G[i][0], G[j][0]))
    return (sum(lcm), lcm, ij)


def _reduce_basis(G, key):
    G = [_monic(g, key) for g in G if g]
    lms = [_lm(g, key) for g in G]
    keep = []
    for i, m in enumerate(lms):
        if any(_divides(lms[j], m) and (lms[j] != m or j < i) for j in range(len(G)) if j != i):
            continue
        keep.append(i)
    G = [G[i] for i in keep]
    out = []
    for i, g in enumerate(G):
        others = [(_lm(h, key), h) for j, h in enumerate(G) if j != i]
        lm = _lm(g, key)
        tail = normal_form({e: v for e, v in g.items() if e != lm}, others, key)
        tail[lm] = g[lm]
        out.append(_monic(tail, key))
    out.sort(key=lambda g: key(_lm(g, key)), reverse=True)
    return out


def _to_dict(p):
    return {e: Fraction(c) for e, c in p.terms.items()}


def groebner(gens, order="grevlex"):
    """Reduced, monic Groebner basis of the given Polynomials, sorted by
    decreasing leading monomial."""
    gens = list(gens)
    if not gens:
        return []
    n = gens[0].nvars
    return [Polynomial(n, g) for g in buchberger([_to_dict(p) for p in gens], order)]


def leading_monomial(p, order="grevlex"):
    return _lm(p.terms, order_key(order))


class Ideal:
    """Ideal of ``Q[x_1..x_n]`` with a cached reduced Groebner basis per order."""

    _cache = {}

    def __init__(self, nvars, gens, order="grevlex"):
        self.nvars = nvars
        self.gens = tuple(g for g in gens if not g.is_zero())
        for g in self.gens:
            if g.nvars != nvars:
                raise UsageError("generator lives in a different ring")
        self.order = order
        self.key = order_key(order)

    def with_order(self, order):
        return Ideal(self.nvars, self.gens, order)

    def _basis_dicts(self):
        ck = (self.nvars, frozenset(self.gens), self.order)
        if ck not in Ideal._cache:
            Ideal._cache[ck] = buchberger([_to_dict(g) for g in self.gens], self.order)
        return Ideal._cache[ck]

    def basis(self):
        return [Polynomial(self.nvars, g) for g in self._basis_dicts()]

    def _pairs(self):
        return [(_lm(g, self.key), g) for g in self._basis_dicts()]

    def reduce(self, f):
        return Polynomial(self.nvars, normal_form(_to_dict(f), self._pairs(), self.key))

    def contains(self, f):
        return self.reduce(f).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        return (isinstance(other, Ideal) and self.nvars == other.nvars
                and self.contains_ideal(other) and other.contains_ideal(self))

    __hash__ = None

    def is_unit(self):
        return any(not any(lm) for lm in self.leading_monomials())

    def leading_monomials(self):
        return [lm for lm, _ in self._pairs()]

    def standard_monomials(self):
        """Monomials outside the initial ideal, or ``None`` if there are infinitely many."""
        lms = self.leading_monomials()
        if not lms:
            return None
        bounds = []
        for i in range(self.nvars):
            pure = [lm[i] for lm in lms if all(x == 0 for j, x in enumerate(lm) if j != i) and lm[i]]
            if not pure and not any(not any(lm) for lm in lms):
                return None
            bounds.append(min(pure) if pure else 0)
        return [e for e in product(*(range(b) for b in bounds))
                if not any(_divides(lm, e) for lm in lms)]

    def quotient_dimension(self):
        std = self.standard_monomials()
        return INFINITE if std is None else len(std)

    def __add__(self, other):
        return Ideal(self.nvars, self.gens + other.gens, self.order)

    def __repr__(self):
        return f"Ideal({self.nvars}, [{', '.join(g.to_str() for g in self.gens)}])"


def quotient_dimension(ideal):
    return ideal.quotient_dimension()


def divide_exact(p, f, order="grevlex"):
    """``p / f`` when ``f`` divides ``p``; raises ``ValueError`` otherwise."""
    key = order_key(order)
    rem = dict(_to_dict(p))
    fd = _to_dict(f)
    lf = _lm(fd, key)
    q = {}
    while rem:
        m = _lm(rem, key)
        if not _divides(lf, m):
            raise ValueError("polynomial is not divisible")
        shift = tuple(a - b for a, b in zip(m, lf))
        c = rem[m] / fd[lf]
        q[shift] = q.get(shift, 0) + c
        _sub_scaled(rem, fd, c, shift)
    return Polynomial(p.nvars, q)


def _lift(p, k):
    """Embed ``p`` into a ring with ``k`` new leading variables."""
    return Polynomial(p.nvars + k, {(0,) * k + e: c for e, c in p.terms.items()})


def intersection(I, J):
    """``I ∩ J`` by eliminating ``t`` from ``t I + (1 - t) J``."""
    n = I.nvars
    t = Polynomial.variable(n + 1, 0)
    gens = [t * _lift(g, 1) for g in I.gens] + [(1 - t) * _lift(g, 1) for g in J.gens]
    G = buchberger([_to_dict(g) for g in gens], ("block", 1))
    out = [Polynomial(n, {e[1:]: c for e, c in g.items()}) for g in G if all(e[0] == 0 for e in g)]
    return Ideal(n, out, I.order)


def colon_ideal(I, f):
    """``(I : f) = {g : g f in I}``; ``f`` must be nonzero."""
    if f.is_zero():
        raise UsageError("colon by the zero polynomial")
    if f.is_constant():
        return Ideal(I.nvars, I.gens, I.order)
    inter = intersection(I, Ideal(I.nvars, [f], I.order))
    return Ideal(I.nvars, [divide_exact(g, f) for g in inter.gens], I.order)
