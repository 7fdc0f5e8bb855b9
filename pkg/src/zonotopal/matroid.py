"""Combinatorics of a list of integer vectors.

Subsets of the list are always frozensets of positions (0-based), so repeated
vectors stay distinct members.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
import math

from . import linalg
from .errors import InvalidVectorList, PreconditionError


@dataclass(frozen=True)
class VectorList:
    d: int
    vectors: tuple

    def __post_init__(self):
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if self.d < 1:
            raise InvalidVectorList("dimension must be positive")
        for i, v in enumerate(vecs):
            if len(v) != self.d:
                raise InvalidVectorList(f"vector {i} has length {len(v)}, expected d={self.d}")
            if not any(v):
                raise InvalidVectorList(
                    f"vector {i} is zero; every element of the list must be nonzero")
        if not vecs or linalg.rank(vecs) != self.d:
            raise InvalidVectorList(
                "the vectors must span the lattice rationally (rank of the list = d)")

    @classmethod
    def of(cls, *vectors):
        return cls(len(vectors[0]), tuple(vectors))

    @property
    def n(self):
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def sub(self, indices):
        return [self.vectors[i] for i in sorted(indices)]

    def complement(self, indices):
        return frozenset(range(self.n)) - frozenset(indices)

    @property
    def matrix(self):
        """The d x n matrix whose columns are the vectors."""
        return linalg.columns_to_matrix(self.vectors, self.d)

    def permuted(self, perm):
        return VectorList(self.d, tuple(self.vectors[p] for p in perm))

    def to_json(self):
        return {"d": self.d, "vectors": [list(v) for v in self.vectors]}


def span_rank(vectors):
    return linalg.rank(vectors) if vectors else 0


def saturated_basis(vectors, dim):
    """Canonical basis (column HNF) of ``span_Q(vectors) ∩ Z^dim``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors or span_rank(vectors) == 0:
        return ()
    normals = linalg.kernel_basis(vectors)  # n with v.n = 0 for all v
    if normals:
        gens = linalg.kernel_basis(normals)
    else:
        gens = [tuple(int(i == j) for i in range(dim)) for j in range(dim)]
    H, _ = linalg.hnf(linalg.columns_to_matrix(gens, dim))
    cols = linalg.transpose(H)
    return tuple(c for c in cols if any(c))


@dataclass(frozen=True)
class RationalSubspace:
    indices: frozenset
    basis: tuple
    dim: int

    @property
    def key(self):
        return self.basis

    def contains_vector(self, v):
        if self.dim == 0:
            return not any(v)
        return span_rank(list(self.basis) + [tuple(v)]) == self.dim

    def is_subspace_of(self, other):
        return self.indices <= other.indices

    def sort_key(self):
        return (self.dim, tuple(sorted(self.indices)))

    def __repr__(self):
        return f"RationalSubspace(dim={self.dim}, indices={sorted(self.indices)})"


def subspace_of(X, indices):
    """The rational subspace spanned by ``X[indices]``."""
    vecs = X.sub(indices)
    r = span_rank(vecs)
    members = frozenset(i for i in range(X.n)
                        if span_rank(vecs + [X[i]]) == r) if r else frozenset()
    return RationalSubspace(members, saturated_basis(vecs, X.d), r)


def rational_subspaces(X):
    """All rational subspaces, deduplicated, ordered by dimension then members."""
    seen = {}
    frontier = [subspace_of(X, ())]
    seen[frontier[0].indices] = frontier[0]
    while frontier:
        nxt = []
        for s in frontier:
            for i in range(X.n):
                if i in s.indices:
                    continue
                t = subspace_of(X, s.indices | {i})
                if t.indices not in seen:
                    seen[t.indices] = t
                    nxt.append(t)
        frontier = nxt
    return sorted(seen.values(), key=RationalSubspace.sort_key)


def hyperplanes(X):
    return [s for s in rational_subspaces(X) if s.dim == X.d - 1]


def bases(X):
    """All d-subsets with nonzero determinant, in lexicographic order."""
    return [frozenset(B) for B in combinations(range(X.n), X.d)
            if linalg.det(linalg.columns_to_matrix(X.sub(B), X.d)) != 0]


def basis_determinant(X, B):
    return linalg.det(linalg.columns_to_matrix(X.sub(B), X.d))


def cocircuits(X):
    """Pairs ``(cocircuit, hyperplane)`` with ``cocircuit = X \\ hyperplane``."""
    full = frozenset(range(X.n))
    return [(full - s.indices, s) for s in hyperplanes(X)]


@dataclass(frozen=True)
class UpSetFamily:
    """Up-closed family of subsets of ``{0..n-1}``, stored by its minimal sets."""

    n: int
    minimal: tuple = field(default=())

    def __post_init__(self):
        sets = {frozenset(A) for A in self.minimal}
        mins = [A for A in sets if not any(B < A for B in sets)]
        object.__setattr__(self, "minimal",
                           tuple(sorted(mins, key=lambda A: (len(A), sorted(A)))))

    def __contains__(self, A):
        A = frozenset(A)
        return any(m <= A for m in self.minimal)

    def members(self):
        out = []
        for bits in product((0, 1), repeat=self.n):
            A = frozenset(i for i, b in enumerate(bits) if b)
            if A in self:
                out.append(A)
        return sorted(out, key=lambda A: (len(A), sorted(A)))

    def __le__(self, other):
        return all(m in other for m in self.minimal)

    def __eq__(self, other):
        return isinstance(other, UpSetFamily) and self.n == other.n and self.minimal == other.minimal

    def __hash__(self):
        return hash((self.n, self.minimal))

    def __len__(self):
        return len(self.members())

    def with_set(self, A):
        return UpSetFamily(self.n, self.minimal + (frozenset(A),))

    def without_minimal(self, A):
        """Remove the minimal element ``A`` (the result is still up-closed)."""
        A = frozenset(A)
        if A not in self.minimal:
            raise PreconditionError(f"{sorted(A)} is not a minimal element")
        return UpSetFamily(self.n, [B for B in self.members() if B != A])

    def to_json(self):
        return [sorted(A) for A in self.minimal]


def upset_L(X):
    return UpSetFamily(X.n, [C for C, _ in cocircuits(X)])


def upset_S(X):
    return UpSetFamily(X.n, [{i} for i in range(X.n)])


def upset_L_Omega(X, cell):
    """``{A : C(X \\ A) does not contain the big cell}``, by ray membership."""
    from .cones import cell_inside_cone

    if cell.X != X:
        raise PreconditionError("big cell belongs to a different vector list")
    full = frozenset(range(X.n))
    members = []
    for k in range(X.n + 1):
        for A in combinations(range(X.n), k):
            A = frozenset(A)
            if any(m <= A for m in members):
                continue
            if not cell_inside_cone(cell, X.sub(full - A)):
                members.append(A)
    return UpSetFamily(X.n, members)


def is_semilocal(X, T, cells=None):
    """Return ``(True, cell)`` for the first big cell with ``L(X) <= T <= L_Omega``."""
    from .cones import big_cells

    if not upset_L(X) <= T:
        return False, None
    for cell in cells if cells is not None else big_cells(X):
        if T <= upset_L_Omega(X, cell):
            return True, cell
    return False, None


def is_unimodular(X):
    return all(abs(basis_determinant(X, B)) == 1 for B in bases(X))


def zonotope_volume(X):
    return sum(abs(basis_determinant(X, B)) for B in bases(X))


def zonotope_volume_in_span(X, s):
    """Volume of ``Z(X ∩ s)`` measured in the lattice ``Γ ∩ s``."""
    vecs = X.sub(s.indices)
    if s.dim == 0:
        return 1
    total = 0
    for B in combinations(range(len(vecs)), s.dim):
        sub = [vecs[i] for i in B]
        if span_rank(sub) == s.dim:
            total += linalg.saturation_index(sub, X.d)
    return total


def zonotope_bounding_box(X):
    lo = tuple(sum(min(0, v[k]) for v in X.vectors) for k in range(X.d))
    hi = tuple(sum(max(0, v[k]) for v in X.vectors) for k in range(X.d))
    return lo, hi


def in_zonotope(X, point):
    from .lp import feasible_point

    n = X.n
    A_ub = [[int(i == j) for j in range(n)] for i in range(n)]
    return feasible_point(X.matrix, point, A_ub, [1] * n, nvars=n) is not None


def zonotope_lattice_points(X):
    """Number of points of ``Z^d`` in the zonotope (exact LP per candidate)."""
    lo, hi = zonotope_bounding_box(X)
    count = 0
    for p in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if in_zonotope(X, p):
            count += 1
    return count


def family_Xk(k):
    return VectorList(2, ((1, 0), (0, 1), (k, k)))


def lcm_of_determinants(X):
    return math.lcm(*(abs(basis_determinant(X, B)) for B in bases(X)))
