from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from zonotopal.groebner import Ideal, colon_ideal, groebner, intersection, quotient_dimension
from zonotopal.linalg import INFINITE
from zonotopal.polynomial import Polynomial

X, Y, Z = sympy.symbols("x y z")
SYMS = (X, Y, Z)


def to_sympy(p):
    expr = 0
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
        for s, k in zip(SYMS, e):
            term *= s ** k
        expr += term
    return sympy.expand(expr)


def gens_strategy(nvars):
    exps = st.tuples(*[st.integers(0, 2)] * nvars)
    poly = st.dictionaries(exps, st.integers(-3, 3), min_size=1, max_size=3)
    return st.lists(poly, min_size=1, max_size=3).map(
        lambda ps: [Polynomial(nvars, p) for p in ps if any(p.values())]).filter(bool)


def sympy_basis(gens, nvars, order):
    G = sympy.groebner([to_sympy(g) for g in gens], *SYMS[:nvars], order=order)
    return sorted(sympy.srepr(sympy.expand(g / sympy.Poly(g, *SYMS[:nvars]).LC(order=order)))
                  for g in G.exprs)


x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)


def test_small_examples():
    assert groebner([x, y]) == [x, y] or groebner([x, y]) == [y, x]
    assert groebner([x * x - 1, x - 1]) == [x - 1]
    assert set(groebner([x * y, x * x, y * y])) == {x * y, x * x, y * y}
    assert Ideal(2, [x, y]).quotient_dimension() == 1
    assert quotient_dimension(Ideal(2, [x])) is INFINITE
    assert Ideal(2, [x - 1, x]).is_unit()


@settings(max_examples=30)
@given(gens_strategy(2), st.sampled_from(["grevlex", "lex"]))
def test_reduced_basis_matches_sympy(gens, order):
    ours = sorted(sympy.srepr(to_sympy(g)) for g in groebner(gens, order))
    assert ours == sympy_basis(gens, 2, order)


@settings(max_examples=15)
@given(gens_strategy(3))
def test_three_variable_bases_match_sympy(gens):
    ours = sorted(sympy.srepr(to_sympy(g)) for g in groebner(gens, "grevlex"))
    assert ours == sympy_basis(gens, 3, "grevlex")


@settings(max_examples=30)
@given(gens_strategy(2))
def test_dimension_is_order_independent(gens):
    assert Ideal(2, gens, "grevlex").quotient_dimension() == \
        Ideal(2, gens, "lex").quotient_dimension()


def test_colon_and_intersection():
    g = x * x + y
    f = x - y * y
    I = Ideal(2, [g * f])
    assert colon_ideal(I, f) == Ideal(2, [g])
    J = Ideal(2, [x * y, y * y])
    assert colon_ideal(J, Polynomial.constant(2, 1)) == J
    assert colon_ideal(J, y) == Ideal(2, [x, y])
    inter = intersection(Ideal(2, [x]), Ideal(2, [y]))
    assert inter == Ideal(2, [x * y])


@settings(max_examples=20)
@given(gens_strategy(2), gens_strategy(2))
def test_colon_definition(a, b):
    I = Ideal(2, a)
    f = b[0]
    C = colon_ideal(I, f)
    for g in C.basis():
        assert I.contains(g * f)
    # I is always inside (I : f)
    assert C.contains_ideal(I)
