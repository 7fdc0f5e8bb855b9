"""Cones, chambers of the rational arrangement, big cells and the
agreement region ``Omega - Z(X)``.

All membership questions are decided by exact LP.  Big cells are open; their
closures are used for ray containment and for the closed region test.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import linalg
from .errors import CertificationFailed, DimensionUnsupported, NotPointed, PreconditionError
from .lp import feasible_point, max_slack
from .matroid import hyperplanes

MAX_CELL_DIMENSION = 3


def cone_contains(gens, v, strict=False):
    """Is ``v`` in the cone spanned by ``gens`` (its interior when ``strict``)?"""
    gens = [tuple(g) for g in gens]
    v = tuple(v)
    if not gens:
        return not strict and not any(v)
    d = len(v)
    M = linalg.columns_to_matrix(gens, d)
    n = len(gens)
    if not strict:
        return feasible_point(M, v, nvars=n) is not None
    if linalg.rank(gens) < d:
        return False
    # t_i >= s for all i, maximise s
    A_ub = [[-int(i == j) for j in range(n)] for i in range(n)]
    res = max_slack(M, v, A_ub, [0] * n, nvars=n, slack_rows=range(n))
    return res is not None and res[0] > 0


def pointedness_certificate(X):
    """A primitive integer ``phi`` with ``phi . a > 0`` for every vector of ``X``."""
    A_ub = [[-x for x in a] for a in X.vectors]
    phi = feasible_point(A_ub=A_ub, b_ub=[-1] * X.n, nvars=X.d, free=range(X.d))
    if phi is None:
        raise NotPointed("the vectors do not lie strictly on one side of a hyperplane")
    return linalg.integral_direction(phi)


def _normal(hyperplane, d):
    if d == 1:
        return (1,)
    (n,) = linalg.kernel_basis(hyperplane.basis)
    n = linalg.primitive(n)
    if next(x for x in n if x) < 0:
        n = tuple(-x for x in n)
    return n


@dataclass(frozen=True)
class Chamber:
    rays: tuple
    representative: tuple
    signs: tuple

    def contains(self, v, normals):
        return all(s * linalg.dot(nrm, v) >= 0 for s, nrm in zip(self.signs, normals))


@dataclass(frozen=True, eq=False)
class BigCell:
    X: object
    chambers: tuple
    id: tuple
    index: int = field(default=-1)

    @property
    def rays(self):
        """Extreme rays of the closure (rays of the chambers on its boundary)."""
        gens = sorted({r for c in self.chambers for r in c.rays})
        return [r for r in gens if not cone_contains([g for g in gens if g != r], r)]

    @property
    def representative(self):
        return self.id

    def __eq__(self, other):
        return isinstance(other, BigCell) and self.X == other.X and self.id == other.id

    def __hash__(self):
        return hash((self.X, self.id))

    def to_json(self):
        return {"index": self.index, "id": list(self.id),
                "rays": [list(r) for r in self.rays],
                "chambers": [{"rays": [list(r) for r in c.rays],
                              "representative": list(c.representative)}
                             for c in self.chambers]}


@dataclass(frozen=True)
class Arrangement:
    X: object
    normals: tuple
    chambers: tuple  # chambers inside C(X)
    cells: tuple
    walls: tuple  # (cell_i, cell_j, hyperplane position, wall rays) between distinct cells


def singular(X, v):
    """Is ``v`` in ``∪_{A in L(X)} C(X \\ A)`` (= union of cones of hyperplanes)?"""
    return any(cone_contains(X.sub(s.indices), v) for s in hyperplanes(X))


def _wall_points(rays):
    if len(rays) == 1:
        return [tuple(k * x for x in rays[0]) for k in (1, 2, 3)]
    pts = []
    for w in range(3):
        weights = [1] * len(rays)
        if w:
            weights[(w - 1) % len(rays)] = 2
        pts.append(tuple(sum(c * r[i] for c, r in zip(weights, rays)) for i in range(len(rays[0]))))
    return pts


@lru_cache(maxsize=None)
def arrangement(X):
    d = X.d
    if d > MAX_CELL_DIMENSION:
        raise DimensionUnsupported(f"chamber enumeration is implemented for d <= 3, got d={d}")
    pointedness_certificate(X)
    hyps = hyperplanes(X) if d > 1 else []
    normals = [(1,)] if d == 1 else [_normal(h, d) for h in hyps]
    # hyperplanes with all of X on one side fix their sign on C(X)
    fixed = {}
    for j, nrm in enumerate(normals):
        vals = [linalg.dot(nrm, a) for a in X.vectors]
        if all(v >= 0 for v in vals):
            fixed[j] = 1
        elif all(v <= 0 for v in vals):
            fixed[j] = -1
    box_A = [[int(i == k) for k in range(d)] for i in range(d)] + \
            [[-int(i == k) for k in range(d)] for i in range(d)]
    box_b = [1] * (2 * d)

    def open_region(signs):
        A = [[-s * x for x in normals[j]] for j, s in signs.items()]
        res = max_slack(A_ub=A + box_A, b_ub=[0] * len(A) + box_b, nvars=d, free=range(d),
                        slack_rows=range(len(A)))
        return res is not None and res[0] > 0

    regions = [dict(fixed)]
    for j in range(len(normals)):
        if j in fixed:
            continue
        nxt = []
        for reg in regions:
            for s in (1, -1):
                cand = dict(reg)
                cand[j] = s
                if open_region(cand):
                    nxt.append(cand)
        regions = nxt

    # candidate rays: lines cut out by d-1 independent hyperplanes
    cands = set()
    for sub in combinations(range(len(normals)), d - 1):
        rows = [normals[j] for j in sub]
        ker = linalg.kernel_basis(rows) if rows else [(1,)]
        if len(ker) == 1:
            r = linalg.primitive(ker[0])
            cands.add(r)
            cands.add(tuple(-x for x in r))
    cands = sorted(cands)
    chambers = []
    for reg in regions:
        signs = tuple(reg[j] for j in range(len(normals)))
        rays = tuple(r for r in cands
                     if all(s * linalg.dot(nrm, r) >= 0 for s, nrm in zip(signs, normals)))
        rep = tuple(sum(r[i] for r in rays) for i in range(d))
        chambers.append(Chamber(rays, rep, signs))
    chambers.sort(key=lambda c: c.representative)

    parent = list(range(len(chambers)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    adjacent = []
    for a, b in combinations(range(len(chambers)), 2):
        diff = [j for j, (s, t) in enumerate(zip(chambers[a].signs, chambers[b].signs)) if s != t]
        if len(diff) != 1:
            continue
        j = diff[0]
        wall = [r for r in chambers[a].rays if linalg.dot(normals[j], r) == 0]
        verdicts = {singular(X, p) for p in _wall_points(wall)}
        if len(verdicts) != 1:
            raise CertificationFailed("wall is partially singular", wall=wall)
        is_sing = verdicts.pop()
        adjacent.append((a, b, j, tuple(wall), is_sing))
        if not is_sing:
            parent[find(a)] = find(b)

    groups = {}
    for i in range(len(chambers)):
        groups.setdefault(find(i), []).append(chambers[i])
    raw = sorted((min(c.representative for c in g), tuple(g)) for g in groups.values())
    cells = tuple(BigCell(X, g, cid, idx) for idx, (cid, g) in enumerate(raw))
    owner = {}
    for cell in cells:
        for c in cell.chambers:
            owner[c] = cell.index
    walls = []
    for a, b, j, wall, is_sing in adjacent:
        ca, cb = owner[chambers[a]], owner[chambers[b]]
        if ca != cb:
            walls.append((min(ca, cb), max(ca, cb), j, wall))
    return Arrangement(X, tuple(normals), tuple(chambers), cells, tuple(walls))


def big_cells(X):
    return list(arrangement(X).cells)


def cell_by_index(X, index):
    cells = big_cells(X)
    if not 0 <= index < len(cells):
        raise PreconditionError(f"cell index {index} out of range (X has {len(cells)} big cells)")
    return cells[index]


def cell_inside_cone(cell, gens):
    """Does the closed cone ``C(gens)`` contain the big cell (all chamber rays)?"""
    rays = {r for c in cell.chambers for r in c.rays}
    return all(cone_contains(gens, r) for r in sorted(rays))


def cell_contains(cell, v):
    """Membership of ``v`` in the open big cell."""
    arr = arrangement(cell.X)
    if not any(c.contains(v, arr.normals) for c in cell.chambers):
        return False
    if not cone_contains(cell.X.vectors, v, strict=True):
        return False
    return not singular(cell.X, v)


def adjacent_pairs(X):
    """Distinct pairs of big cells sharing a wall: ``(i, j, normal, wall_rays)``."""
    arr = arrangement(X)
    seen = {}
    for i, j, h, wall in arr.walls:
        seen.setdefault((i, j, h), wall)
    return [(i, j, arr.normals[h], wall) for (i, j, h), wall in sorted(seen.items())]


def dm_region_contains(cell, X, lam, strict=False):
    """Is ``lam`` in ``closure(Omega) - Z(X)`` (the open ``Omega - Z(X)`` when strict)?"""
    if cell.X != X:
        raise PreconditionError("big cell belongs to a different vector list")
    lam = tuple(lam)
    n, d = X.n, X.d
    for ch in cell.chambers:
        k = len(ch.rays)
        # variables: t (n) then mu (k);  X t - R mu = -lam
        A_eq = [list(X.matrix[i]) + [-r[i] for r in ch.rays] for i in range(d)]
        b_eq = [-x for x in lam]
        A_ub = [[int(i == j) for j in range(n + k)] for i in range(n)]
        b_ub = [1] * n
        if not strict:
            if feasible_point(A_eq, b_eq, A_ub, b_ub, nvars=n + k) is not None:
                return True
            continue
        A_ub = A_ub + [[-int(n + i == j) for j in range(n + k)] for i in range(k)]
        b_ub = b_ub + [0] * k
        res = max_slack(A_eq, b_eq, A_ub, b_ub, nvars=n + k, slack_rows=range(n, n + k))
        if res is not None and res[0] > 0:
            return True
    return False


def interior_sample(cell, scale=1):
    return tuple(Fraction(x * scale) for x in cell.id)
