"""Finite-index sublattices of Z^d and quasi-polynomials over them."""

from dataclasses import dataclass
from itertools import product
import math

from . import linalg
from .errors import PreconditionError, UsageError
from .polynomial import Polynomial


@dataclass(frozen=True)
class Lattice:
    """Full-rank sublattice of ``Z^d`` stored by its column HNF basis."""

    basis: tuple  # d x d, lower triangular, positive diagonal

    @classmethod
    def from_generators(cls, gens, d):
        gens = [tuple(g) for g in gens]
        H, _ = linalg.hnf(linalg.columns_to_matrix(gens, d))
        cols = [c for c in linalg.transpose(H) if any(c)]
        if len(cols) != d:
            raise PreconditionError("period lattice must have full rank")
        return cls(linalg.transpose(cols))

    @classmethod
    def scaled(cls, m, d):
        return cls(tuple(tuple(m * int(i == j) for j in range(d)) for i in range(d)))

    @classmethod
    def full(cls, d):
        return cls.scaled(1, d)

    @property
    def d(self):
        return len(self.basis)

    @property
    def index(self):
        return math.prod(self.basis[i][i] for i in range(self.d))

    def reduce(self, v):
        """Canonical coset representative (coordinates in ``[0, H_jj)``)."""
        v = list(v)
        if len(v) != self.d:
            raise UsageError(f"point {tuple(v)} does not have {self.d} coordinates")
        for j in range(self.d):
            q = v[j] // self.basis[j][j]
            if q:
                for i in range(j, self.d):
                    v[i] -= q * self.basis[i][j]
        return tuple(v)

    def cosets(self):
        return [self.reduce(c) for c in product(*(range(self.basis[j][j]) for j in range(self.d)))]

    def contains(self, v):
        return not any(self.reduce(v))

    def intersection(self, other):
        d = self.d
        M = linalg.columns_to_matrix(list(linalg.transpose(self.basis)) +
                                     [tuple(-x for x in c) for c in linalg.transpose(other.basis)], d)
        ker = linalg.kernel_basis(M)
        gens = [linalg.matvec(self.basis, k[:d]) for k in ker]
        return Lattice.from_generators(gens, d)

    def is_sublattice_of(self, other):
        return all(other.contains(c) for c in linalg.transpose(self.basis))


class QuasiPolynomial:
    """A function on ``Z^d`` given by one polynomial per coset of ``lattice``."""

    def __init__(self, lattice, pieces):
        self.lattice = lattice
        self.pieces = {}
        for rep, p in pieces.items():
            self.pieces[lattice.reduce(rep)] = p
        missing = [c for c in lattice.cosets() if c not in self.pieces]
        if missing:
            raise PreconditionError(f"no polynomial for coset {missing[0]}")

    @classmethod
    def polynomial(cls, p):
        return cls(Lattice.full(p.nvars), {(0,) * p.nvars: p})

    @property
    def d(self):
        return self.lattice.d

    def __call__(self, lam):
        return self.pieces[self.lattice.reduce(lam)](lam)

    def refine(self, lattice):
        if not lattice.is_sublattice_of(self.lattice):
            raise PreconditionError("can only refine to a sublattice")
        return QuasiPolynomial(lattice, {c: self.pieces[self.lattice.reduce(c)]
                                         for c in lattice.cosets()})

    def _common(self, other):
        L = self.lattice.intersection(other.lattice)
        return self.refine(L), other.refine(L)

    def __add__(self, other):
        a, b = self._common(other)
        return QuasiPolynomial(a.lattice, {c: a.pieces[c] + b.pieces[c] for c in a.pieces})

    def __neg__(self):
        return QuasiPolynomial(self.lattice, {c: -p for c, p in self.pieces.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        a, b = self._common(other)
        return a.pieces == b.pieces

    __hash__ = None

    def is_zero(self):
        return all(p.is_zero() for p in self.pieces.values())

    def translate(self, v):
        """``lam -> self(lam - v)``."""
        return QuasiPolynomial(self.lattice, {
            c: self.pieces[self.lattice.reduce(tuple(x - y for x, y in zip(c, v)))].shift(v)
            for c in self.pieces})

    def nabla(self, a):
        return self - self.translate(a)

    def degree(self):
        return max(p.degree() for p in self.pieces.values())

    def coarsen(self):
        """Smallest ``m Z^d`` (``m`` dividing the current scale) on which the
        pieces still agree.  Only for lattices of the form ``m Z^d``."""
        m = self.lattice.basis[0][0]
        if self.lattice != Lattice.scaled(m, self.d):
            return self
        for m2 in sorted(k for k in range(1, m + 1) if m % k == 0):
            L = Lattice.scaled(m2, self.d)
            if all(self.pieces[c] == self.pieces[L.reduce(c)] for c in self.pieces):
                return QuasiPolynomial(L, {c: self.pieces[c] for c in L.cosets()})
        return self

    def period(self):
        """The smallest ``m`` with ``m Z^d`` a period lattice (scaled lattices only)."""
        return self.coarsen().lattice.basis[0][0]

    def is_integer_valued_on(self, points):
        return all(self(p).denominator == 1 for p in points)

    def to_json(self):
        return {"lattice": [list(r) for r in self.lattice.basis],
                "pieces": [{"coset": list(c), "polynomial": self.pieces[c].to_str()}
                           for c in sorted(self.pieces)]}

    def __repr__(self):
        inner = ", ".join(f"{c}: {self.pieces[c]}" for c in sorted(self.pieces))
        return f"QuasiPolynomial(index={self.lattice.index}, {{{inner}}})"


def zero(d):
    return QuasiPolynomial.polynomial(Polynomial(d))
