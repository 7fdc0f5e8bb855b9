import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from zonotopal import linalg
from zonotopal.errors import UsageError

small = st.integers(-6, 6)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


def square(n=st.integers(1, 4)):
    return n.flatmap(lambda k: st.lists(st.lists(small, min_size=k, max_size=k),
                                        min_size=k, max_size=k))


def sympy_invariants(M):
    D = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    k = min(D.shape)
    return sorted(abs(int(D[i, i])) for i in range(k))


def test_snf_small_example():
    _, inv = linalg.snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert inv == (2, 6, 12)


def test_hnf_shape_and_unimodular():
    M = [[4, 6, 8], [2, 3, 5]]
    H, U = linalg.hnf(M)
    assert linalg.matmul(M, U) == H
    assert abs(linalg.det(U)) == 1
    assert H[0][1] == 0 or H[0][0] != 0


def test_det_and_index():
    assert linalg.det([[2, 1], [1, 1]]) == 1
    assert linalg.det([]) == 1
    assert linalg.lattice_index([[2, 0], [0, 3]]) == 6
    assert linalg.lattice_index([[1, 2], [2, 4]]) is linalg.INFINITE
    assert linalg.lattice_index([[2, 1]]) == 1
    with pytest.raises(UsageError):
        linalg.det([[1, 2]])


def test_kernel_and_saturation():
    K = linalg.kernel_basis([[1, 1, 1]])
    assert len(K) == 2
    assert all(sum(v) == 0 for v in K)
    assert linalg.saturation_index([(2, 2)], 2) == 2
    assert linalg.saturation_index([(1, 0), (1, 2)], 2) == 2
    assert linalg.primitive((4, -6)) == (2, -3)
    assert linalg.integral_direction((Fraction(1, 2), Fraction(-1, 3))) == (3, -2)


def test_solve():
    assert linalg.solve([[1, 1], [1, -1]], [3, 1]) == (2, 1)
    assert linalg.solve([[1, 1], [2, 2]], [1, 3]) is None


@given(matrices())
def test_snf_matches_sympy(M):
    _, inv = linalg.snf(M)
    assert sorted(abs(x) for x in inv) == sympy_invariants(M)
    nz = [x for x in inv if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(matrices())
def test_hnf_is_unimodular_transform(M):
    H, U = linalg.hnf(M)
    assert linalg.matmul(M, U) == H
    assert abs(linalg.det(U)) == 1
    assert linalg.rank(H) == linalg.rank(M)


@given(square())
def test_det_matches_sympy(M):
    assert linalg.det(M) == sympy.Matrix(M).det()


@given(matrices())
def test_rank_and_kernel(M):
    assert linalg.rank(M) == sympy.Matrix(M).rank()
    K = linalg.kernel_basis(M)
    assert len(K) == len(M[0]) - linalg.rank(M)
    for v in K:
        assert linalg.matvec(M, v) == tuple(0 for _ in M)
    if K:
        # the kernel lattice is saturated
        assert linalg.saturation_index(K, len(M[0])) == 1


@given(square())
def test_lattice_index_is_abs_det(M):
    d = linalg.det(M)
    assert linalg.lattice_index(M) == (abs(d) if d else linalg.INFINITE)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_xgcd(a, b):
    g, u, v = linalg.xgcd(a, b)
    assert g == math.gcd(a, b)
    assert u * a + v * b == g
