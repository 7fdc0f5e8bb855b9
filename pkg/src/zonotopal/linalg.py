"""Exact integer and rational linear algebra.

Matrices are row-major sequences of rows.  Results are returned as tuples of
tuples so they can be hashed and shared.  Nothing here touches floating point.
"""

from fractions import Fraction
import math

from .errors import UsageError

INFINITE = math.inf


def shape(M):
    rows = len(M)
    cols = len(M[0]) if rows else 0
    for row in M:
        if len(row) != cols:
            raise UsageError("ragged matrix")
    return rows, cols


def freeze(M):
    return tuple(tuple(row) for row in M)


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M):
    r, c = shape(M)
    return tuple(tuple(M[i][j] for i in range(r)) for j in range(c))


def matmul(A, B):
    ra, ca = shape(A)
    rb, cb = shape(B)
    if ca != rb:
        raise UsageError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = transpose(B) if rb else ()
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) if rb else (0,) * cb
                 for row in A)


def matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def columns_to_matrix(vectors, dim=None):
    """Matrix whose columns are the given vectors."""
    vectors = [tuple(v) for v in vectors]
    if dim is None:
        if not vectors:
            raise UsageError("dimension needed for an empty column list")
        dim = len(vectors[0])
    return tuple(tuple(v[i] for v in vectors) for i in range(dim))


def xgcd(a, b):
    """Return (g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def _col_combine(M, i, j, a, b, c, d):
    # (col_i, col_j) <- (a*col_i + b*col_j, c*col_i + d*col_j)
    for row in M:
        x, y = row[i], row[j]
        row[i] = a * x + b * y
        row[j] = c * x + d * y


def _col_swap(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def hnf(M):
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``H = M U``, ``U`` unimodular.  ``H`` is in column
    echelon form: the pivot of column ``j`` sits strictly below the pivot of
    column ``j - 1``, pivots are positive and every entry to the left of a
    pivot is reduced into ``[0, pivot)``.  Zero columns come last.
    """
    m, n = shape(M)
    H = [list(row) for row in M]
    U = [list(row) for row in identity(n)]
    p = 0
    for r in range(m):
        if p == n:
            break
        for j in range(p + 1, n):
            b = H[r][j]
            if b == 0:
                continue
            a = H[r][p]
            if a == 0:
                _col_swap(H, p, j)
                _col_swap(U, p, j)
                continue
            g, u, v = xgcd(a, b)
            _col_combine(H, p, j, u, v, -b // g, a // g)
            _col_combine(U, p, j, u, v, -b // g, a // g)
        piv = H[r][p]
        if piv == 0:
            continue
        if piv < 0:
            for row in H:
                row[p] = -row[p]
            for row in U:
                row[p] = -row[p]
            piv = -piv
        for k in range(p):
            q = H[r][k] // piv
            if q:
                for row in H:
                    row[k] -= q * row[p]
                for row in U:
                    row[k] -= q * row[p]
        p += 1
    return freeze(H), freeze(U)


def snf(M):
    """Smith normal form by repeated gcd elimination.

    Returns ``(D, invariants)`` where ``D`` has the shape of ``M`` and
    ``invariants`` lists the ``min(rows, cols)`` diagonal entries
    ``d_1 | d_2 | ...`` (zeros last).
    """
    m, n = shape(M)
    A = [list(row) for row in M]
    k = min(m, n)
    t = 0
    while t < k:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        _col_swap(A, t, j)
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // piv
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // piv
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % piv), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
            # move the smallest nonzero entry of row/col t to the pivot spot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cands)
            A[t], A[i] = A[i], A[t]
            _col_swap(A, t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        t += 1
    invariants = [A[i][i] for i in range(k)]
    return freeze(A), tuple(invariants)


def det(M):
    """Determinant via fraction-free Bareiss elimination."""
    m, n = shape(M)
    if m != n:
        raise UsageError("det needs a square matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def row_reduce(M):
    """Reduced row echelon form over the rationals.  Returns (R, pivot_cols)."""
    R = [[Fraction(x) for x in row] for row in M]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if R[i][c]), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, tuple(pivots)


def rank(M):
    if not M or not len(M[0]):
        return 0
    return len(row_reduce(M)[1])


def kernel_basis(M):
    """Lattice basis of the integer kernel ``{x in Z^n : M x = 0}``."""
    m, n = shape(M)
    if m == 0:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    H, U = hnf(M)
    zero_cols = [j for j in range(n) if all(H[i][j] == 0 for i in range(m))]
    return [tuple(U[i][j] for i in range(n)) for j in zero_cols]


def rational_kernel(M):
    """Basis of the rational kernel (as Fraction tuples)."""
    m, n = shape(M)
    if m == 0:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    R, piv = row_reduce(M)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(R, piv):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(M, b):
    """One exact rational solution of ``M x = b`` or ``None``."""
    m, n = shape(M)
    if len(b) != m:
        raise UsageError(f"right-hand side has length {len(b)}, expected {m}")
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, piv = row_reduce(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, piv):
        x[pc] = row[n]
    return tuple(x)


def lattice_index(B):
    """Index in ``Z^d`` of the lattice spanned by the columns of ``B``.

    Returns ``INFINITE`` when the columns do not span ``Q^d``.
    """
    d, c = shape(B)
    if c < d:
        return INFINITE
    _, inv = snf(B)
    if any(x == 0 for x in inv):
        return INFINITE
    return math.prod(inv)


def saturation_index(vectors, dim):
    """Index of the span of ``vectors`` inside its saturation ``span_Q ∩ Z^d``."""
    vectors = list(vectors)
    if not vectors:
        return 1
    _, inv = snf(columns_to_matrix(vectors, dim))
    return math.prod(x for x in inv if x)


def primitive(v):
    """Divide an integer vector by the gcd of its entries."""
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g else tuple(v)


def integral_direction(v):
    """Scale a rational vector to a primitive integer vector of the same direction."""
    den = math.lcm(*(Fraction(x).denominator for x in v))
    return primitive(tuple(int(Fraction(x) * den) for x in v))


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))
