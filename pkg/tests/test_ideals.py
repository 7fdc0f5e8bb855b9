import pytest
import sympy
from hypothesis import given, settings, strategies as st

from zonotopal.cones import big_cells
from zonotopal.corpus import DOUBLED_BASIS, STANDARD_BASIS, X1, X3, random_pointed
from zonotopal.errors import UsageError
from zonotopal.ideals import (LaurentIdeal, clifford_by_subsets, clifford_class, dual_dimensions,
                              ideal_J, ideal_J_i, laurent_quotient_dimension, laurent_to_ring,
                              ring_to_laurent)
from zonotopal.linalg import INFINITE
from zonotopal.matroid import (VectorList, bases, family_Xk, is_unimodular, upset_L, upset_L_Omega,
                               zonotope_volume)
from zonotopal.operators import nabla_symbol
from zonotopal.polynomial import LaurentPolynomial, Polynomial

LISTS = [X1, X3, family_Xk(2), family_Xk(3), STANDARD_BASIS, DOUBLED_BASIS, random_pointed(2),
         VectorList(2, ((1, 0), (1, 1), (1, 2), (0, 1)))]
IDS = ["X1", "X3", "X2", "X3k", "basis", "doubled", "random", "fan"]


@pytest.mark.parametrize("X", LISTS, ids=IDS)
def test_dimensions_match_matroid_counts(X):
    dstar, dmstar = dual_dimensions(X)
    assert dstar == len(bases(X))
    assert dmstar == zonotope_volume(X)
    if is_unimodular(X):
        assert dstar == dmstar
    assert dual_dimensions(X, order="lex") == (dstar, dmstar)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_local_dimensions(k):
    X = family_Xk(k)
    for c in big_cells(X):
        assert ideal_J(X, upset_L_Omega(X, c)).dimension() == k + 1


def test_generators():
    t = LaurentPolynomial.character((1,))
    assert ideal_J(X1, upset_L(X1)).gens == ((1 - t * t) * (1 - t),)
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    assert set(ideal_J(X3, upset_L(X3), "partial").gens) == {x * y, x * (x + y), y * (x + y)}
    assert ideal_J_i(X3, 2) == ideal_J(X3, upset_L(X3))
    assert ideal_J_i(X3, 3).is_unit()
    assert ideal_J_i(X3, 1).dimension() is INFINITE
    with pytest.raises(UsageError):
        ideal_J_i(X3, 4)
    with pytest.raises(UsageError):
        ideal_J(X3, upset_L(X3), "other")


def test_laurent_localization():
    single = LaurentPolynomial.nabla((1,))
    assert laurent_quotient_dimension([single]) == 1
    t = LaurentPolynomial.character((1,))
    # a monomial multiple generates the same ideal
    assert LaurentIdeal(1, [single * t ** 3]) == LaurentIdeal(1, [single])
    assert LaurentIdeal(1, [t]).is_unit()
    f = LaurentPolynomial(2, {(-1, 2): 3, (0, -1): 1})
    shift, _ = f.to_polynomial()
    assert ring_to_laurent(laurent_to_ring(f)) * LaurentPolynomial.character(shift) == f
    I = LaurentIdeal(2, [f])
    assert I.contains(f * LaurentPolynomial.character((-5, 4)))


def test_laurent_colon():
    I = LaurentIdeal(2, [clifford_class(X3)])
    C = I.colon(nabla_symbol(X3, {1, 2}))
    assert C == LaurentIdeal(2, [LaurentPolynomial.nabla((1, 0))])
    assert I.colon(LaurentPolynomial.constant(2, 1)) == I


def test_clifford():
    assert clifford_class(VectorList(1, ((3,),))) == LaurentPolynomial.nabla((3,))
    assert clifford_class(X1) == LaurentPolynomial(1, {(0,): 1, (1,): -1, (2,): -1, (3,): 1})
    assert clifford_class(X3) == clifford_by_subsets(X3)


@settings(max_examples=25)
@given(st.lists(st.tuples(st.integers(-2, 3), st.integers(-2, 3)).filter(any),
                min_size=2, max_size=4))
def test_clifford_subset_sum(vecs):
    try:
        X = VectorList(2, tuple(vecs))
    except Exception:
        return
    assert clifford_class(X) == clifford_by_subsets(X)


def test_laurent_dimension_against_sympy():
    # independent route: sympy Groebner basis in Q[x, y, t] with t*x*y - 1
    X = family_Xk(2)
    x, y, t = sympy.symbols("x y t")
    gens = []
    for A in upset_L(X).minimal:
        expr = 1
        for i in A:
            a = X[i]
            expr *= 1 - x ** a[0] * y ** a[1]
        gens.append(sympy.expand(expr))
    G = sympy.groebner(gens + [t * x * y - 1], x, y, t, order="grevlex")
    assert G.is_zero_dimensional
    lms = [sympy.Poly(g, x, y, t).monoms(order="grevlex")[0] for g in G.exprs]
    count = 0
    for a in range(12):
        for b in range(12):
            for c in range(12):
                if not any(all(e <= f for e, f in zip(m, (a, b, c))) for m in lms):
                    count += 1
    assert count == 5 == ideal_J(X, upset_L(X)).dimension()
