"""Partition function, multivariate spline, and the fitted local pieces
``q_Omega`` (quasi-polynomial) and ``p_Omega`` (polynomial)."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
import math

from . import linalg
from .cones import adjacent_pairs, cell_by_index, dm_region_contains, pointedness_certificate
from .errors import (CertificationFailed, DimensionUnsupported, InterpolationInconsistent,
                     UsageError)
from .matroid import bases, lcm_of_determinants, upset_L, upset_L_Omega
from .operators import membership_D, membership_DM
from .polynomial import Polynomial, monomials_up_to
from .quasipoly import Lattice, QuasiPolynomial

SPLINE_NORMALIZATIONS = ("kernel", "lebesgue")


# ---------------------------------------------------------------- partition function

def partition_bruteforce(X, lam):
    """Count ``x in N^n`` with ``sum x_i a_i = lam`` by direct search."""
    lam = tuple(lam)
    phi = pointedness_certificate(X)
    top = linalg.dot(phi, lam)
    if top < 0:
        return 0
    B = sorted(bases(X)[0])
    rest = [i for i in range(X.n) if i not in B]
    Bm = linalg.columns_to_matrix(X.sub(B), X.d)
    ranges = [range(top // linalg.dot(phi, X[i]) + 1) for i in rest]
    count = 0
    for xs in product(*ranges):
        r = list(lam)
        for c, i in zip(xs, rest):
            if c:
                for k in range(X.d):
                    r[k] -= c * X[i][k]
        y = linalg.solve(Bm, r)
        if all(v.denominator == 1 and v >= 0 for v in y):
            count += 1
    return count


@lru_cache(maxsize=None)
def _partition_rec(vectors, phi, lam):
    if not vectors:
        return int(not any(lam))
    if linalg.dot(phi, lam) < 0:
        return 0
    a = vectors[-1]
    rest = vectors[:-1]
    # P_X(lam) = P_X(lam - a) + P_{X \ a}(lam), unrolled along lam - j a
    pa = linalg.dot(phi, a)
    top = linalg.dot(phi, lam) // pa
    total = 0
    for j in range(top, -1, -1):
        mu = tuple(x - j * y for x, y in zip(lam, a))
        total += _partition_rec(rest, phi, mu)
    return total


def partition_recursive(X, lam):
    """Memoised deletion recursion ``P_X(lam) = P_X(lam - a) + P_{X \\ a}(lam)``."""
    phi = pointedness_certificate(X)
    return _partition_rec(X.vectors, phi, tuple(lam))


def partition(X, lam):
    return partition_recursive(X, lam)


# ---------------------------------------------------------------- spline

def _affine_rank(points):
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return linalg.rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def _triangulate(verts, zeros, face, dim):
    """Pulling triangulation of the face with vertex indices ``face``."""
    if dim == 0:
        return [(face[0],)]
    v0 = min(face, key=lambda i: verts[i])
    facets = set()
    for i in set().union(*(zeros[v] for v in face)):
        F = tuple(v for v in face if i in zeros[v])
        if v0 in F or F in facets:
            continue
        if _affine_rank([verts[v] for v in F]) == dim - 1:
            facets.add(F)
    out = []
    for F in sorted(facets):
        out.extend((v0,) + s for s in _triangulate(verts, zeros, list(F), dim - 1))
    return out


def fiber_vertices(X, lam):
    """Vertices of ``{x >= 0 : X x = lam}`` as basic feasible solutions."""
    lam = tuple(Fraction(x) for x in lam)
    found = {}
    for B in bases(X):
        idx = sorted(B)
        y = linalg.solve(linalg.columns_to_matrix(X.sub(idx), X.d), lam)
        if all(v >= 0 for v in y):
            x = [Fraction(0)] * X.n
            for i, v in zip(idx, y):
                x[i] = v
            found[tuple(x)] = None
    return list(found)


def spline_value(X, lam, normalization="kernel"):
    """Volume of the fiber polytope ``{x >= 0 : X x = lam}``.

    ``kernel``: the unit cell of ``ker X ∩ Z^n`` has volume 1.
    ``lebesgue``: the density of the push-forward of Lebesgue measure on the
    orthant, which is the kernel value divided by ``[Z^d : ZX]``.
    """
    if normalization not in SPLINE_NORMALIZATIONS:
        raise UsageError(f"unknown normalization {normalization!r}")
    pointedness_certificate(X)
    k = X.n - X.d
    if k > 3:
        raise DimensionUnsupported(f"spline evaluation needs n - d <= 3, got {k}")
    verts = fiber_vertices(X, lam)
    if not verts:
        return Fraction(0)
    if k == 0:
        vol = Fraction(1)
    else:
        B = sorted(bases(X)[0])
        N = [i for i in range(X.n) if i not in B]
        pts = [tuple(v[i] for i in N) for v in verts]
        if _affine_rank(pts) < k:
            return Fraction(0)
        zeros = [frozenset(i for i in range(X.n) if v[i] == 0) for v in verts]
        simplices = _triangulate(pts, zeros, list(range(len(pts))), k)
        lebesgue = Fraction(0)
        for s in simplices:
            rows = [[a - b for a, b in zip(pts[j], pts[s[0]])] for j in s[1:]]
            lebesgue += abs(_rat_det(rows))
        lebesgue /= math.factorial(k)
        K = linalg.kernel_basis(X.matrix)
        proj = abs(linalg.det([[kv[i] for i in N] for kv in K]))
        vol = lebesgue / proj
    if normalization == "lebesgue":
        vol /= linalg.lattice_index(X.matrix)
    return vol


def _rat_det(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det


# ---------------------------------------------------------------- interpolation helpers

def _select_nodes(candidates, monomials, need):
    """Greedily pick candidates whose monomial rows raise the Vandermonde rank."""
    chosen, rows = [], []
    for p in candidates:
        row = [_mono(p, e) for e in monomials]
        if linalg.rank(rows + [row]) > len(rows):
            rows.append(row)
            chosen.append(p)
            if len(chosen) == need:
                break
    return chosen, rows


def _mono(p, e):
    v = Fraction(1)
    for x, k in zip(p, e):
        if k:
            v *= Fraction(x) ** k
    return v


def _interpolate(d, monomials, rows, values):
    sol = linalg.solve(rows, values)
    if sol is None:
        raise InterpolationInconsistent("interpolation system is inconsistent")
    return Polynomial(d, {e: c for e, c in zip(monomials, sol)})


# ---------------------------------------------------------------- p_Omega

@dataclass
class SplineFit:
    cell: int
    polynomial: Polynomial
    nodes: list
    held_out: list
    normalization: str
    in_D: bool

    def to_json(self):
        return {"cell": self.cell, "polynomial": self.polynomial.to_str(),
                "degree": self.polynomial.degree(), "nodes": len(self.nodes),
                "held_out_checked": len(self.held_out), "in_D": self.in_D,
                "normalization": self.normalization}


def _cell_samples(cell, limit):
    out = []
    for ch in cell.chambers:
        m = len(ch.rays)
        for w in sorted(product(range(1, limit + 1), repeat=m), key=lambda w: (sum(w), w)):
            out.append(tuple(sum(c * r[i] for c, r in zip(w, ch.rays)) for i in range(cell.X.d)))
    seen = {}
    for p in out:
        seen.setdefault(p, None)
    return list(seen)


def fit_p_omega(X, cell, normalization="kernel"):
    """Interpolate the spline on the big cell by a polynomial of degree ``n - d``."""
    if isinstance(cell, int):
        cell = cell_by_index(X, cell)
    deg = X.n - X.d
    monos = monomials_up_to(X.d, deg)
    cands = _cell_samples(cell, 2 + deg + len(monos))
    nodes, rows = _select_nodes(cands, monos, len(monos))
    if len(nodes) < len(monos):
        raise InterpolationInconsistent("not enough independent samples in the cell")
    values = [spline_value(X, p, normalization) for p in nodes]
    p = _interpolate(X.d, monos, rows, values)
    used = set(nodes)
    held = [q for q in cands if q not in used][::max(1, len(cands) // 12)][:12]
    for q in held:
        v = spline_value(X, q, normalization)
        if p(q) != v:
            raise InterpolationInconsistent(f"held-out sample {q}: fit {p(q)} != spline {v}",
                                            point=q)
    in_D = membership_D(X, upset_L(X), p)
    if not in_D:
        raise CertificationFailed("fitted spline piece is not annihilated by the cocircuits")
    return SplineFit(cell.index, p, nodes, held, normalization, in_D)


def smoothness_check(X, i, j, normalization="kernel"):
    """Derivatives of ``p_i - p_j`` restricted to the common wall.

    Reports the requested order ``n - d - 1``, the largest order up to which all
    derivatives vanish on the wall, and the order ``|X \\ H| - 2`` predicted by the
    cocircuit of the wall hyperplane ``H``."""
    walls = [w for w in adjacent_pairs(X) if {w[0], w[1]} == {i, j}]
    if not walls:
        raise CertificationFailed(f"cells {i} and {j} do not share a wall")
    diff = fit_p_omega(X, i, normalization).polynomial - fit_p_omega(X, j, normalization).polynomial
    required = X.n - X.d - 1
    reports = []
    for _, _, normal, wall in walls:
        span = linalg.kernel_basis([normal])
        cocircuit = sum(1 for a in X.vectors if linalg.dot(normal, a) != 0)
        vanish = _vanishing_order(diff, span)
        failing = [r for r in range(required + 1) if r > vanish]
        reports.append({"cells": [i, j], "normal": list(normal),
                        "wall_rays": [list(r) for r in wall],
                        "required_order": required, "vanishing_order": vanish,
                        "cocircuit_order": cocircuit - 2, "failing_orders": failing})
    return reports


def _vanishing_order(p, span):
    """Largest ``r`` with every derivative of order ``<= r`` zero on ``span``
    (``math.inf`` for the zero polynomial, ``-1`` if ``p`` itself is nonzero there)."""
    if p.is_zero():
        return math.inf
    r = -1
    layer = [p]
    while True:
        if any(not q.restrict(span).is_zero() for q in layer):
            return r
        r += 1
        nxt = {}
        for q in layer:
            for v in range(p.nvars):
                dq = q.diff(v)
                if not dq.is_zero():
                    nxt[dq] = None
        layer = list(nxt)
        if not layer:
            return math.inf


# ---------------------------------------------------------------- q_Omega

@dataclass
class QuasiFit:
    cell: int
    quasi: QuasiPolynomial
    period_scale: int
    nodes: dict
    checked: int
    boundary: list = field(default_factory=list)
    cocircuits_ok: bool = True
    local_ok: bool = True
    box: int = 8

    def to_json(self):
        return {"cell": self.cell, "quasi_polynomial": self.quasi.to_json(),
                "period_guess": self.period_scale, "period": self.quasi.period(),
                "agreement_points_checked": self.checked,
                "boundary_points": [{"point": list(p), "agrees": ok} for p, ok in self.boundary],
                "annihilated_by_cocircuits": self.cocircuits_ok,
                "annihilated_by_local_family": self.local_ok, "box": self.box}


def _box_points(d, R):
    return list(product(range(-R, R + 1), repeat=d))


def fit_q_omega(X, cell, box=8):
    """Fit ``q_Omega`` coset by coset and certify it against the partition function."""
    if isinstance(cell, int):
        cell = cell_by_index(X, cell)
    phi = pointedness_certificate(X)
    d, deg = X.d, X.n - X.d
    m = lcm_of_determinants(X)
    L = Lattice.scaled(m, d)
    monos = monomials_up_to(d, deg)
    need = len(monos)
    cosets = L.cosets()
    region = {}

    def inside(lam):
        if lam not in region:
            region[lam] = dm_region_contains(cell, X, lam, strict=True)
        return region[lam]

    R = max(4, 2 * m)
    nodes = {}
    while True:
        cands = sorted(_box_points(d, R), key=lambda p: (linalg.dot(phi, p), p))
        by_coset = {c: [] for c in cosets}
        for p in cands:
            by_coset[L.reduce(p)].append(p)
        ok = True
        for c in cosets:
            if c in nodes and len(nodes[c][0]) == need:
                continue
            chosen, rows = [], []
            for p in by_coset[c]:
                row = [_mono(p, e) for e in monos]
                if linalg.rank(rows + [row]) == len(rows):
                    continue
                if not inside(p):
                    continue
                rows.append(row)
                chosen.append(p)
                if len(chosen) == need:
                    break
            nodes[c] = (chosen, rows)
            ok &= len(chosen) == need
        if ok:
            break
        if R > 64 * max(1, m):
            raise InterpolationInconsistent("could not find interpolation nodes in the region")
        R *= 2
    pieces = {}
    for c in cosets:
        chosen, rows = nodes[c]
        pieces[c] = _interpolate(d, monos, rows, [partition_recursive(X, p) for p in chosen])
    q = QuasiPolynomial(L, pieces)

    checked = 0
    boundary = []
    for lam in _box_points(d, box):
        if inside(lam):
            checked += 1
            P = partition_recursive(X, lam)
            if q(lam) != P:
                raise CertificationFailed(f"q differs from P at {lam}: {q(lam)} != {P}",
                                          point=lam, q=q(lam), P=P)
        elif dm_region_contains(cell, X, lam, strict=False):
            boundary.append((lam, q(lam) == partition_recursive(X, lam)))
    cocircuits_ok = membership_DM(X, upset_L(X), q)
    if not cocircuits_ok:
        raise CertificationFailed("fitted quasi-polynomial is not annihilated by the cocircuits")
    local_ok = membership_DM(X, upset_L_Omega(X, cell), q)
    return QuasiFit(cell.index, q, m, {c: v[0] for c, v in nodes.items()}, checked,
                    boundary, cocircuits_ok, local_ok, box)


def translate_span_rank(q):
    """Dimension of the span of all integer translates of ``q``."""
    d = q.d
    L = q.lattice
    cosets = sorted(L.cosets())
    deg = max(q.degree(), 0)
    monos = monomials_up_to(d, deg)

    def vec(f):
        f = f.refine(L) if f.lattice != L else f
        return [f.pieces[c].coefficient(e) for c in cosets for e in monos]

    basis_rows = []
    frontier = [q]
    while frontier:
        nxt = []
        for f in frontier:
            row = vec(f)
            if linalg.rank(basis_rows + [row]) > len(basis_rows):
                basis_rows.append(row)
                for i in range(d):
                    e = tuple(int(i == j) for j in range(d))
                    nxt.append(f.translate(e))
                    nxt.append(f.translate(tuple(-x for x in e)))
        frontier = nxt
    return len(basis_rows)
