"""Modules over the character ring given by commuting action matrices, their
explicit free resolution, the dual complex, and Ext certification.

Two flavors share the code: ``discrete`` (Laurent ring, integer invertible
actions, SNF over Z) and ``differentiable`` (polynomial ring, rational actions,
ranks over Q).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
import random

from . import linalg, sparse
from .errors import CertificationFailed, PreconditionError, RewritingDiverges
from .polynomial import LaurentPolynomial, Polynomial

FLAVORS = ("discrete", "differentiable")


def _ring(flavor):
    return LaurentPolynomial if flavor == "discrete" else Polynomial


def _inverse(M):
    """Inverse of an integer matrix with determinant +-1 (integer entries)."""
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    R, piv = linalg.row_reduce(aug)
    if tuple(piv[:n]) != tuple(range(n)):
        raise PreconditionError("action matrix is singular")
    inv = [[R[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in inv for x in row):
        raise PreconditionError("action matrix is not invertible over the integers")
    return linalg.freeze([[int(x) for x in row] for row in inv])


@dataclass(frozen=True)
class ZGModule:
    """Rank ``s`` module with ``x_i`` acting by ``actions[i]``."""

    s: int
    actions: tuple
    flavor: str = "discrete"

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise PreconditionError(f"unknown flavor {self.flavor!r}")
        acts = tuple(linalg.freeze(A) for A in self.actions)
        object.__setattr__(self, "actions", acts)
        for A in acts:
            if linalg.shape(A) != (self.s, self.s):
                raise PreconditionError(f"action matrices must be {self.s}x{self.s}")
        for A, B in combinations(acts, 2):
            if linalg.matmul(A, B) != linalg.matmul(B, A):
                raise PreconditionError("action matrices do not commute")
        if self.flavor == "discrete":
            for A in acts:
                if any(not isinstance(x, int) for row in A for x in row):
                    raise PreconditionError("discrete actions must be integer matrices")
                if abs(linalg.det(A)) != 1:
                    raise PreconditionError("discrete actions must lie in GL_s(Z)")

    @property
    def d(self):
        return len(self.actions)

    def transpose(self):
        return ZGModule(self.s, tuple(linalg.transpose(A) for A in self.actions), self.flavor)

    def to_json(self):
        return {"s": self.s, "flavor": self.flavor,
                "actions": [[[_num(x) for x in row] for row in A] for A in self.actions]}


def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class FreeComplex:
    """``maps[k]`` goes between spots ``k`` and ``k + 1``.

    ``kind == "chain"``: ``maps[k] : F_{k+1} -> F_k`` (the resolution).
    ``kind == "cochain"``: ``maps[k] : C^k -> C^{k+1}`` (its dual)."""

    d: int
    s: int
    flavor: str
    kind: str
    maps: tuple
    labels: tuple  # labels[k] = basis of the free module at spot k

    def ranks(self):
        return [len(l) for l in self.labels]


def _labels(d, s, i):
    return tuple((I, k) for I in combinations(range(d), i) for k in range(s))


def _zero_matrix(ring, d, rows, cols):
    z = ring(d)
    return [[z for _ in range(cols)] for _ in range(rows)]


def build_resolution(M):
    """The complex ``0 -> F_d -> ... -> F_0`` with ``F_i = R^{s binom(d,i)}``.

    For ``J = I \\ {b_j}`` the ``(J, I)`` block of ``delta_i`` is
    ``(-1)^{j+1} (x_{b_j} Id - Psi(x_{b_j}))``."""
    ring = _ring(M.flavor)
    d, s = M.d, M.s
    labels = tuple(_labels(d, s, i) for i in range(d + 1))
    maps = []
    for i in range(1, d + 1):
        rows, cols = labels[i - 1], labels[i]
        ridx = {l: n for n, l in enumerate(rows)}
        mat = _zero_matrix(ring, d, len(rows), len(cols))
        for c, (I, k) in enumerate(cols):
            for j, b in enumerate(I, start=1):
                J = tuple(x for x in I if x != b)
                sign = (-1) ** (j + 1)
                xb = ring.variable(d, b)
                for r in range(s):
                    entry = -M.actions[b][r][k] * ring.constant(d, 1)
                    if r == k:
                        entry = entry + xb
                    mat[ridx[(J, r)]][c] = mat[ridx[(J, r)]][c] + sign * entry
        maps.append(tuple(tuple(row) for row in mat))
    return FreeComplex(d, s, M.flavor, "chain", tuple(maps), labels)


def _ring_matmul(A, B, ring, d):
    rows, inner = len(A), len(B)
    cols = len(B[0]) if B else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = ring(d)
            for k in range(inner):
                if not A[i][k].is_zero() and not B[k][j].is_zero():
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def verify_complex(C):
    """All consecutive compositions vanish exactly."""
    ring = _ring(C.flavor)
    for a, b in zip(C.maps, C.maps[1:]):
        prod = _ring_matmul(a, b, ring, C.d) if C.kind == "chain" else _ring_matmul(b, a, ring, C.d)
        if any(not x.is_zero() for row in prod for x in row):
            return False
    return True


def dual_complex(C):
    """Transposed maps, now read as a cochain complex ``C^0 -> ... -> C^d``."""
    if C.kind != "chain":
        raise PreconditionError("dual_complex expects the resolution")
    maps = tuple(tuple(zip(*m)) if m else m for m in C.maps)
    return FreeComplex(C.d, C.s, C.flavor, "cochain", maps, C.labels)


def _rewriting_rules(mat, s, d, flavor):
    """Read relations ``x_j e_i = sum_k w_k e_k`` off the columns of ``mat``."""
    rules = {}
    for col in zip(*mat):
        var_entries = [(i, f) for i, f in enumerate(col) if not f.is_zero() and not f.is_constant()]
        if len(var_entries) != 1:
            raise RewritingDiverges("relation column does not isolate one variable term")
        i, f = var_entries[0]
        lin = [e for e in f.terms if any(e)]
        if len(lin) != 1 or sum(lin[0]) != 1 or min(lin[0]) < 0:
            raise RewritingDiverges("relation is not of the form x_j e_i - w")
        j = lin[0].index(1)
        lead = f.terms[lin[0]]
        w = []
        for k, g in enumerate(col):
            c = g.coefficient((0,) * d)
            w.append(Fraction(-c) / lead)
        if (i, j) in rules and rules[(i, j)] != w:
            raise RewritingDiverges("two different rules for the same monomial")
        rules[(i, j)] = w
    if len(rules) != s * d:
        raise RewritingDiverges("missing rewriting rules")
    return [[[rules[(i, j)][k] for i in range(s)] for k in range(s)] for j in range(d)]


def _rewrite(terms_by_gen, A, Ainv, s, d):
    """Rewrite ``sum_i f_i e_i`` to an integer/rational vector in the generators."""
    total = [Fraction(0)] * s
    for i, f in enumerate(terms_by_gen):
        for e, c in f.terms.items():
            v = [Fraction(int(k == i)) for k in range(s)]
            for j, p in enumerate(e):
                mat = A[j] if p >= 0 else Ainv[j]
                if mat is None:
                    raise RewritingDiverges("negative power without an inverse")
                for _ in range(abs(p)):
                    v = [sum(mat[r][c2] * v[c2] for c2 in range(s)) for r in range(s)]
            for k in range(s):
                total[k] += c * v[k]
    return total


def cokernel_presentation(mat, s, d, flavor):
    """Action matrices of the cokernel of a map whose columns are rewriting rules,
    with every relation checked to rewrite to zero."""
    A = _rewriting_rules(mat, s, d, flavor)
    Aint = []
    for Aj in A:
        if flavor == "discrete" and any(x.denominator != 1 for row in Aj for x in row):
            raise RewritingDiverges("rewriting produced non-integer coefficients")
        Aint.append(linalg.freeze([[int(x) if x.denominator == 1 else x for x in row]
                                   for row in Aj]))
    Ainv = [_inverse(Aj) if flavor == "discrete" else None for Aj in Aint]
    for col in zip(*mat):
        if any(_rewrite(col, Aint, Ainv, s, d)):
            raise RewritingDiverges("a relation does not rewrite to zero")
    return ZGModule(s, tuple(Aint), flavor)


def top_cokernel(Cdual):
    """Cokernel of the last dual map, i.e. the top Ext."""
    if Cdual.kind != "cochain":
        raise PreconditionError("top_cokernel expects the dual complex")
    return cokernel_presentation(Cdual.maps[-1], Cdual.s, Cdual.d, Cdual.flavor)


def bottom_cokernel(C):
    """Cokernel of ``delta_1`` in the resolution; should give back the module."""
    return cokernel_presentation(C.maps[0], C.s, C.d, C.flavor)


# ---------------------------------------------------------------- truncated cohomology

def _exponents(flavor, d, N):
    if flavor == "discrete":
        return list(product(range(-N, N + 1), repeat=d))
    return [e for e in product(range(N + 1), repeat=d) if sum(e) <= N]


def _inside(flavor, e, N):
    if flavor == "discrete":
        return all(-N <= x <= N for x in e)
    return min(e) >= 0 and sum(e) <= N


def _apply(mat, exps):
    """Columns of the truncated Z-linear map for each ``(col label, exponent)``."""
    cols = []
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        for m in exps:
            col = {}
            for r in range(len(mat)):
                for e, v in mat[r][c].terms.items():
                    key = (r, tuple(a + b for a, b in zip(e, m)))
                    w = col.get(key, 0) + v
                    if w:
                        col[key] = w
                    else:
                        col.pop(key, None)
            cols.append(col)
    return cols


def _coefficients(cols, field):
    if field:
        return [{k: Fraction(v) for k, v in c.items()} for c in cols]
    out = []
    for c in cols:
        if any(Fraction(v).denominator != 1 for v in c.values()):
            raise PreconditionError("non-integer map in the discrete flavor")
        out.append({k: int(v) for k, v in c.items()})
    return out


class Gauge:
    """Block-diagonal change of basis of the discrete dual complex.

    The block at ``(I, m)`` is ``prod_b P_b^(-m_b) * prod_{b in I} P_b`` with
    ``P_b`` the transposed action of ``x_b``.  Every block is unimodular and acts
    on a single monomial, so inner and outer box supports are preserved and all
    truncated cohomology invariants are unchanged.  In the new basis the maps
    have entries in ``{0, 1, -1}``, which keeps integer elimination small."""

    def __init__(self, M):
        if M.flavor != "discrete":
            raise PreconditionError("the gauge change needs the discrete flavor")
        self.s = M.s
        self.P = [linalg.transpose(A) for A in M.actions]
        self._powers = {}
        self._blocks = {}

    def _pow(self, b, k):
        key = (b, k)
        if key not in self._powers:
            self._powers[key] = _power(self.P[b], k)
        return self._powers[key]

    def block(self, I, m, inverse=False):
        key = (I, m, inverse)
        if key not in self._blocks:
            sign = 1 if inverse else -1
            out = linalg.identity(self.s)
            for b, e in enumerate(m):
                if e:
                    out = linalg.matmul(out, self._pow(b, sign * e))
            for b in I:
                out = linalg.matmul(out, self._pow(b, -sign))
            self._blocks[key] = out
        return self._blocks[key]

    def apply(self, cols, src, tgt, exps):
        """Rewrite the columns of ``_apply(map, exps)`` (source labels ``src``,
        target labels ``tgt``) in the new bases."""
        s = self.s
        nm = len(exps)
        tpos = {l: n for n, l in enumerate(tgt)}
        out = []
        for c, (J, k) in enumerate(src):
            base = c - k  # the column index of (J, 0) in src
            for n, m in enumerate(exps):
                B = self.block(J, m)
                mixed = {}
                for r in range(s):
                    a = B[r][k]
                    if a:
                        for key, v in cols[(base + r) * nm + n].items():
                            mixed[key] = mixed.get(key, 0) + a * v
                grouped = {}
                for (ri, e), v in mixed.items():
                    I, kk = tgt[ri]
                    grouped.setdefault((I, e), [0] * s)[kk] += v
                new = {}
                for (I, e), vec in grouped.items():
                    Binv = self.block(I, e, inverse=True)
                    for kk in range(s):
                        w = sum(Binv[kk][j] * vec[j] for j in range(s) if vec[j])
                        if w:
                            new[(tpos[(I, kk)], e)] = w
                out.append(new)
        return out


def _columns(Cdual, i, exps, field, gauge):
    cols = _coefficients(_apply(Cdual.maps[i], exps), field)
    if gauge is not None:
        cols = gauge.apply(cols, Cdual.labels[i], Cdual.labels[i + 1], exps)
    return cols


def cohomology_at(Cdual, i, N, gauge=None):
    """``(free_rank, torsion)`` of the spot-``i`` cohomology with the margin rule."""
    field = Cdual.flavor == "differentiable"
    d = Cdual.d
    inner = _exponents(Cdual.flavor, d, N - 1)
    full = _exponents(Cdual.flavor, d, N)
    dim_inner = len(Cdual.labels[i]) * len(inner)
    if i < d:
        rank_out = sparse.rank(_columns(Cdual, i, inner, field, gauge), field)
    else:
        rank_out = 0
    if i > 0:
        in_cols = _columns(Cdual, i - 1, full, field, gauge)
        outer = {k for c in in_cols for k in c if not _inside(Cdual.flavor, k[1], N - 1)}
        B = sparse.restrict_to_zero_rows(in_cols, outer, field)
        rank_B, torsion = sparse.smith_data(B, field)
    else:
        rank_B, torsion = 0, ()
    free = dim_inner - rank_out - rank_B
    if free < 0:
        raise CertificationFailed("boundaries exceed cycles; the complex is not a complex")
    return free, torsion


def truncated_cohomology(Cdual, N=4, retries=2, gauge=None):
    """Cohomology at every spot for truncation ``N`` and ``N - 1``.

    If the two disagree, ``N`` grows by 2 (at most ``retries`` times)."""
    if N < 2:
        raise PreconditionError("truncation N must be at least 2")
    for _ in range(retries + 1):
        at_N = [cohomology_at(Cdual, i, N, gauge) for i in range(Cdual.d + 1)]
        at_prev = [cohomology_at(Cdual, i, N - 1, gauge) for i in range(Cdual.d + 1)]
        stable = at_N == at_prev
        if stable:
            break
        N += 2
    return {"N": N, "at_N": at_N, "at_N_minus_1": at_prev, "stabilized": stable}


ROUTES = ("gauge", "raw", "both")


def ext_report(M, N=4, route="gauge"):
    """Everything the Ext statements ask for, for one module.

    ``route`` picks the basis the truncated cohomology is computed in: the
    gauge-changed one (fast), the raw one, or both with a comparison.  The
    differentiable flavor always uses the raw basis."""
    if route not in ROUTES:
        raise PreconditionError(f"unknown route {route!r}")
    C = build_resolution(M)
    D = dual_complex(C)
    top = top_cokernel(D)
    bottom = bottom_cokernel(C)
    if M.flavor != "discrete":
        route = "raw"
    extra = {}
    if route == "raw":
        coh = truncated_cohomology(D, N)
    else:
        coh = truncated_cohomology(D, N, gauge=Gauge(M))
        if route == "both":
            raw = truncated_cohomology(D, N)
            extra["routes_agree"] = raw == coh
    expected = [(0, ())] * M.d + [(M.s, ())]
    return {
        **extra,
        "route": route,
        "d": M.d, "s": M.s, "flavor": M.flavor,
        "resolution_is_complex": verify_complex(C),
        "dual_is_complex": verify_complex(D),
        "degree_zero_homology_is_module": bottom.actions == M.actions,
        "top_cokernel_is_transpose": top.actions == M.transpose().actions,
        "cohomology": coh,
        "cohomology_as_expected": (coh["stabilized"] and coh["at_N"] == expected
                                   and extra.get("routes_agree", True)),
    }


# ---------------------------------------------------------------- test modules

def random_unimodular(rng, s, steps=None):
    A = [[int(i == j) for j in range(s)] for i in range(s)]
    for _ in range(steps if steps is not None else 2 * s):
        if s == 1:
            break
        i, j = rng.sample(range(s), 2)
        c = rng.choice((-2, -1, 1, 2))
        for row in A:
            row[i] += c * row[j]
    if s > 1 and rng.random() < 0.5:
        i, j = rng.sample(range(s), 2)
        for row in A:
            row[i], row[j] = row[j], row[i]
    return linalg.freeze(A)


def _power(A, k):
    s = len(A)
    if k < 0:
        A, k = _inverse(A), -k
    out = linalg.identity(s)
    for _ in range(k):
        out = linalg.matmul(out, A)
    return out


def random_module(seed, max_s=4, max_d=3):
    """Deterministic module with actions ``+-A^k`` for a random unimodular ``A``."""
    rng = random.Random(seed)
    d = rng.randint(1, max_d)
    s = rng.randint(1, max_s)
    A = random_unimodular(rng, s)
    acts = []
    for _ in range(d):
        eps = rng.choice((1, -1))
        k = rng.choice((-1, 0, 1, 2))
        acts.append(tuple(tuple(eps * x for x in row) for row in _power(A, k)))
    return ZGModule(s, tuple(acts))


def random_modules(count=20, seed=0, max_s=4, max_d=3):
    return [random_module(seed * 1000 + i, max_s, max_d) for i in range(count)]


# ---------------------------------------------------------------- staircase presentations

def staircase_presentation(ideal):
    """Integer action matrices of ``x_i`` on the standard monomials of a Laurent ideal.

    Returns ``(module, None)`` or ``(None, reason)`` when the matrices are not
    integral or not invertible over Z for this term order."""
    R = ideal.ring_ideal
    std = R.standard_monomials()
    if std is None:
        return None, "quotient is infinite dimensional"
    idx = {e: n for n, e in enumerate(std)}
    s, d = len(std), ideal.d
    actions = []
    for i in range(d):
        A = [[Fraction(0)] * s for _ in range(s)]
        for c, e in enumerate(std):
            prod = tuple(x + int(k == i) for k, x in enumerate(e))
            nf = R.reduce(Polynomial.monomial(prod))
            for m, v in nf.terms.items():
                A[idx[m]][c] = v
        if any(x.denominator != 1 for row in A for x in row):
            return None, f"multiplication by x_{i + 1} is not integral in the {R.order} staircase"
        A = linalg.freeze([[int(x) for x in row] for row in A])
        if abs(linalg.det(A)) != 1:
            return None, f"multiplication by x_{i + 1} is not invertible over Z"
        actions.append(A)
    return ZGModule(s, tuple(actions)), None


def staircase_module(ideal, orders=("grevlex", "lex")):
    """First term order giving an integral presentation; ``(module, order, reasons)``."""
    reasons = []
    for order in orders:
        M, why = staircase_presentation(ideal.with_order(order))
        if M is not None:
            return M, order, reasons
        reasons.append(why)
    return None, None, reasons
