"""Exact two-phase simplex over the rationals (Bland's rule, dense tableau).

Problems here are tiny (tens of variables), so clarity wins over speed.
"""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LPResult:
    status: str  # 'optimal' | 'infeasible' | 'unbounded'
    x: tuple = None
    value: Fraction = None

    @property
    def feasible(self):
        return self.status != "infeasible"


def _pivot(T, basis, r, c):
    row = T[r]
    inv = 1 / row[c]
    T[r] = row = [v * inv for v in row]
    for i, other in enumerate(T):
        if i != r and other[c]:
            f = other[c]
            T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, cost, allowed):
    """Minimise ``cost . x`` over the current tableau; mutates T and basis."""
    while True:
        m = len(T)
        entering = None
        for j in allowed:
            if j in basis:
                continue
            rc = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m))
            if rc < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                key = (T[i][-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(T, basis, best[1], entering)


def linprog(c, A_eq=(), b_eq=(), A_ub=(), b_ub=(), free=()):
    """Minimise ``c.x`` s.t. ``A_eq x = b_eq``, ``A_ub x <= b_ub``.

    Variables are nonnegative unless their index is listed in ``free``.
    """
    n = len(c)
    free = sorted(set(free))
    # column layout: x (n) | negative parts of free vars | slacks
    n_neg = len(free)
    n_slack = len(A_ub)
    N = n + n_neg + n_slack
    rows = []
    for a, b in zip(A_eq, b_eq):
        row = [Fraction(v) for v in a] + [-Fraction(a[k]) for k in free] + [Fraction(0)] * n_slack
        rows.append((row, Fraction(b)))
    for s, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = [Fraction(v) for v in a] + [-Fraction(a[k]) for k in free] + [Fraction(0)] * n_slack
        row[n + n_neg + s] = Fraction(1)
        rows.append((row, Fraction(b)))
    m = len(rows)
    T = []
    for i, (row, b) in enumerate(rows):
        if b < 0:
            row, b = [-v for v in row], -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(row + art + [b])
    basis = [N + i for i in range(m)]
    phase1 = [Fraction(0)] * N + [Fraction(1)] * m
    _run(T, basis, phase1, range(N + m))
    if sum(T[i][-1] for i in range(m) if basis[i] >= N) > 0:
        return LPResult("infeasible")
    # drive artificial variables out of the basis; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= N:
            j = next((j for j in range(N) if T[i][j] and j not in basis), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, j)
        i += 1
    T = [row[:N] + [row[-1]] for row in T]
    cost = [Fraction(v) for v in c] + [-Fraction(c[k]) for k in free] + [Fraction(0)] * n_slack
    status = _run(T, basis, cost, range(N))
    values = [Fraction(0)] * N
    for i, bi in enumerate(basis):
        values[bi] = T[i][-1]
    x = values[:n]
    for pos, k in enumerate(free):
        x[k] -= values[n + pos]
    if status == "unbounded":
        return LPResult("unbounded", tuple(x))
    return LPResult("optimal", tuple(x), sum(Fraction(ci) * xi for ci, xi in zip(c, x)))


def feasible_point(A_eq=(), b_eq=(), A_ub=(), b_ub=(), nvars=None, free=()):
    """A feasible point of the system, or ``None``."""
    if nvars is None:
        nvars = len(A_eq[0]) if A_eq else len(A_ub[0])
    res = linprog([0] * nvars, A_eq, b_eq, A_ub, b_ub, free)
    return res.x if res.feasible else None


def max_slack(A_eq=(), b_eq=(), A_ub=(), b_ub=(), nvars=None, free=(), slack_rows=()):
    """Largest ``s <= 1`` such that rows listed in ``slack_rows`` of ``A_ub``
    hold with margin ``s`` (``a.x + s <= b``).  Returns ``(s, x)`` or ``None``
    when infeasible even with ``s`` free.

    Used for strict-interior tests: the open system is feasible iff ``s > 0``.
    """
    if nvars is None:
        nvars = len(A_eq[0]) if A_eq else len(A_ub[0])
    slack_rows = set(slack_rows)
    eq = [list(a) + [0] for a in A_eq]
    ub = [list(a) + [int(i in slack_rows)] for i, a in enumerate(A_ub)]
    ub.append([0] * nvars + [1])
    bub = list(b_ub) + [1]
    c = [0] * nvars + [-1]
    res = linprog(c, eq, b_eq, ub, bub, tuple(free) + (nvars,))
    if not res.feasible:
        return None
    return res.x[nvars], res.x[:nvars]
