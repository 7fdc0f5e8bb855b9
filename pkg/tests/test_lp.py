from fractions import Fraction
from itertools import combinations

from hypothesis import given, strategies as st

from zonotopal import linalg
from zonotopal.lp import feasible_point, linprog, max_slack

coef = st.integers(-4, 4)


def vertex_optimum(c, A, b):
    """Minimum of c.x over {A x <= b} in the plane by enumerating vertices."""
    best = None
    for i, j in combinations(range(len(A)), 2):
        x = linalg.solve([A[i], A[j]], [b[i], b[j]])
        if x is None or linalg.rank([A[i], A[j]]) < 2:
            continue
        if all(sum(Fraction(a) * v for a, v in zip(row, x)) <= bb for row, bb in zip(A, b)):
            val = sum(ci * xi for ci, xi in zip(c, x))
            best = val if best is None else min(best, val)
    return best


def test_simple_optimum():
    res = linprog([-1, -1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert res.status == "optimal"
    assert res.value == Fraction(-14, 5)
    assert res.x == (Fraction(8, 5), Fraction(6, 5))


def test_infeasible_and_unbounded():
    assert linprog([0], A_ub=[[1]], b_ub=[-1]).status == "infeasible"
    assert linprog([-1, 0], A_ub=[[0, 1]], b_ub=[1]).status == "unbounded"


def test_equalities_and_free_variables():
    res = linprog([1, 0], A_eq=[[1, 1]], b_eq=[-3], free=[0, 1], A_ub=[[0, 1]], b_ub=[2])
    assert res.status == "optimal"
    assert res.value == -5


def test_max_slack_detects_open_systems():
    # x >= 0, y >= 0, x + y = 1: open interior exists
    s, _ = max_slack(A_eq=[[1, 1]], b_eq=[1], A_ub=[[-1, 0], [0, -1]], b_ub=[0, 0], nvars=2,
                     free=[0, 1], slack_rows=[0, 1])
    assert s > 0
    # x >= 0 and x <= 0: closed but not open
    s, _ = max_slack(A_ub=[[-1], [1]], b_ub=[0, 0], nvars=1, free=[0], slack_rows=[0, 1])
    assert s <= 0


@given(st.lists(st.tuples(coef, coef, st.integers(-5, 10)), min_size=1, max_size=5),
       st.tuples(coef, coef))
def test_against_vertex_enumeration(rows, c):
    # bounded box keeps the problem bounded
    A = [[r[0], r[1]] for r in rows] + [[1, 0], [-1, 0], [0, 1], [0, -1]]
    b = [r[2] for r in rows] + [6, 6, 6, 6]
    res = linprog(list(c), A_ub=A, b_ub=b, free=[0, 1])
    want = vertex_optimum(c, A, b)
    if want is None:
        assert res.status == "infeasible"
    else:
        assert res.status == "optimal"
        assert res.value == want
        assert all(sum(a * x for a, x in zip(row, res.x)) <= bb for row, bb in zip(A, b))
    pt = feasible_point(A_ub=A, b_ub=b, nvars=2, free=[0, 1])
    assert (pt is None) == (want is None)
