"""Sparse exact elimination on column lists.

A sparse matrix is a list of columns, each a dict ``row -> value``.  Over the
integers every step is a unimodular column operation (plus the implicit row
operations that split off unit pivots), so lattice data is preserved.
"""

from fractions import Fraction

from . import linalg


class _Columns:
    def __init__(self, cols):
        self.cols = {}
        self.rows = {}
        for j, c in enumerate(cols):
            c = {r: v for r, v in c.items() if v}
            if c:
                self.cols[j] = c
                for r in c:
                    self.rows.setdefault(r, set()).add(j)

    def axpy(self, k, a, p):
        """``col_k -= a * col_p``."""
        ck = self.cols[k]
        for r, v in self.cols[p].items():
            w = ck.get(r, 0) - a * v
            if w:
                if r not in ck:
                    self.rows.setdefault(r, set()).add(k)
                ck[r] = w
            else:
                if r in ck:
                    del ck[r]
                    self.rows[r].discard(k)
        if not ck:
            del self.cols[k]

    def drop(self, j):
        for r in self.cols[j]:
            self.rows[r].discard(j)
        del self.cols[j]


def _field_pivot_out(M, p, r):
    piv = M.cols[p][r]
    for k in list(M.rows.get(r, ())):
        if k != p:
            M.axpy(k, Fraction(M.cols[k][r]) / piv, p)


def _integer_pivot_out(M, r):
    """Leave exactly one column with a nonzero entry at row ``r``; return it."""
    while True:
        active = [j for j in M.rows.get(r, ()) if j in M.cols]
        if not active:
            return None
        unit = [j for j in active if abs(M.cols[j][r]) == 1]
        if unit:
            p = min(unit, key=lambda j: (len(M.cols[j]), j))
            s = M.cols[p][r]
            for k in active:
                if k != p:
                    M.axpy(k, M.cols[k][r] * s, p)
            return p
        if len(active) == 1:
            return active[0]
        p = min(active, key=lambda j: (abs(M.cols[j][r]), len(M.cols[j]), j))
        for k in active:
            if k != p and k in M.cols and M.cols[k].get(r, 0):
                q = M.cols[k][r] // M.cols[p][r]
                M.axpy(k, q, p)


def _unit_column(M, r):
    """Sparsest column with a unit entry at row ``r``, or None."""
    best = None
    for j in M.rows.get(r, ()):
        if j in M.cols and abs(M.cols[j][r]) == 1:
            if best is None or (len(M.cols[j]), j) < (len(M.cols[best]), best):
                best = j
    return best


def restrict_to_zero_rows(cols, rows, field=False):
    """Basis of ``{v in span(cols) : v_r = 0 for r in rows}`` (lattice span over Z).

    Over Z, rows with a unit entry are cleared first (no coefficient growth
    beyond the entries themselves); gcd steps are used only when no unit is
    left among the remaining rows."""
    M = _Columns(cols)
    pending = sorted(rows, key=lambda r: (len(M.rows.get(r, ())), r))
    while pending:
        deferred = []
        for r in pending:
            active = [j for j in M.rows.get(r, ()) if j in M.cols]
            if not active:
                continue
            if field:
                p = min(active, key=lambda j: (len(M.cols[j]), j))
                _field_pivot_out(M, p, r)
            else:
                p = _unit_column(M, r)
                if p is None:
                    deferred.append(r)
                    continue
                _integer_pivot_out(M, r)
            M.drop(p)
        if len(deferred) == len(pending):
            # no unit anywhere: one gcd step on the cheapest row, then retry
            r = min(deferred, key=lambda r: (min(abs(M.cols[j][r]) for j in M.rows[r]
                                                 if j in M.cols), len(M.rows[r]), r))
            p = _integer_pivot_out(M, r)
            if p is not None:
                M.drop(p)
            deferred.remove(r)
        pending = deferred
    return [M.cols[j] for j in sorted(M.cols)]


def _unit_reduce(M, field):
    """Split off pivots (units over Z, anything over Q); return the pivot count."""
    count = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(M.cols):
            if j not in M.cols:
                continue
            col = M.cols[j]
            cands = [r for r, v in col.items() if field or abs(v) == 1]
            if not cands:
                continue
            r = min(cands, key=lambda r: (len(M.rows[r]), r))
            piv = col[r]
            for k in list(M.rows[r]):
                if k != j:
                    a = Fraction(M.cols[k][r]) / piv if field else M.cols[k][r] * piv
                    M.axpy(k, a, j)
            # the row operations that clear the rest of column j do not touch
            # the other columns, which are now zero at row r
            M.drop(j)
            M.rows.pop(r, None)
            count += 1
            progress = True
    return count


def smith_data(cols, field=False):
    """``(rank, torsion)`` of the lattice (or space) spanned by ``cols``.

    ``torsion`` lists the invariant factors ``> 1`` of the quotient of the
    ambient coordinate lattice by the span."""
    M = _Columns(cols)
    rank = _unit_reduce(M, field)
    if not M.cols:
        return rank, ()
    rows = sorted({r for c in M.cols.values() for r in c})
    idx = {r: i for i, r in enumerate(rows)}
    dense = [[0] * len(M.cols) for _ in rows]
    for j, c in enumerate(M.cols.values()):
        for r, v in c.items():
            dense[idx[r]][j] = v
    if field:
        return rank + linalg.rank(dense), ()
    _, inv = linalg.snf(dense)
    rank += sum(1 for x in inv if x)
    return rank, tuple(x for x in inv if x > 1)


def rank(cols, field=False):
    return smith_data(cols, field)[0]
