from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from zonotopal import linalg
from zonotopal.acceptance import hull_point_count
from zonotopal.cones import big_cells
from zonotopal.corpus import DOUBLED_BASIS, STANDARD_BASIS, X1, X3, random_pointed
from zonotopal.errors import InvalidVectorList, PreconditionError
from zonotopal.matroid import (UpSetFamily, VectorList, bases, cocircuits, family_Xk, is_semilocal,
                               is_unimodular, lcm_of_determinants, rational_subspaces, upset_L,
                               upset_L_Omega, upset_S, zonotope_lattice_points, zonotope_volume,
                               zonotope_volume_in_span)


def planar_lists():
    vec = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any)
    return st.lists(vec, min_size=2, max_size=5).filter(
        lambda vs: linalg.rank(vs) == 2).map(lambda vs: VectorList(2, tuple(vs)))


def test_vector_list_validation():
    with pytest.raises(InvalidVectorList):
        VectorList(2, ((0, 0), (1, 0)))
    with pytest.raises(InvalidVectorList):
        VectorList(2, ((1, 1), (2, 2)))
    with pytest.raises(InvalidVectorList):
        VectorList(2, ((1, 0, 0),))
    assert isinstance(InvalidVectorList("x"), PreconditionError)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_xk_bases_and_volume(k):
    X = family_Xk(k)
    assert len(bases(X)) == 3
    assert zonotope_volume(X) == 2 * k + 1
    assert is_unimodular(X) == (k == 1)


def test_small_bases_and_cocircuits():
    assert len(bases(STANDARD_BASIS)) == 1
    assert bases(X1) == [frozenset({0}), frozenset({1})]
    assert sorted(sorted(C) for C, _ in cocircuits(X3)) == [[0, 1], [0, 2], [1, 2]]
    assert [sorted(C) for C, _ in cocircuits(X1)] == [[0, 1]]
    assert sorted(sorted(C) for C, _ in cocircuits(STANDARD_BASIS)) == [[0], [1]]


def test_rational_subspaces_counts():
    assert len(rational_subspaces(X3)) == 5
    assert len(rational_subspaces(STANDARD_BASIS)) == 4
    assert [s.dim for s in rational_subspaces(X1)] == [0, 1]
    # doubled vectors share their line
    lines = [s for s in rational_subspaces(DOUBLED_BASIS) if s.dim == 1]
    assert sorted(sorted(s.indices) for s in lines) == [[0, 1], [2, 3]]


def test_upsets():
    assert upset_L(X3).to_json() == [[0, 1], [0, 2], [1, 2]]
    assert upset_S(X1).to_json() == [[0], [1]]
    fam = UpSetFamily(3, [{0}, {0, 1}, {1, 2}])
    assert fam.to_json() == [[0], [1, 2]]
    assert {0, 2} in fam and {2} not in fam
    assert len(fam) == 5
    assert fam.without_minimal({0}).to_json() == [[0, 1], [0, 2], [1, 2]]
    with pytest.raises(PreconditionError):
        fam.without_minimal({0, 1})


def test_local_families_of_xk():
    for k in (1, 2, 3):
        X = family_Xk(k)
        cells = big_cells(X)
        assert upset_L_Omega(X, cells[0]).to_json() == [[1], [0, 2]]
        assert upset_L_Omega(X, cells[1]).to_json() == [[0], [1, 2]]
        for c in cells:
            assert upset_L(X) <= upset_L_Omega(X, c)


def test_semilocal():
    ok, cell = is_semilocal(X3, upset_L(X3))
    assert ok and cell is not None
    assert is_semilocal(X3, upset_S(X3)) == (False, None)
    X = family_Xk(2)
    c = big_cells(X)[1]
    assert is_semilocal(X, upset_L_Omega(X, c)) == (True, c)
    with pytest.raises(PreconditionError):
        upset_L_Omega(X3, big_cells(family_Xk(2))[0])


def test_lattice_points_and_decomposition():
    assert zonotope_lattice_points(X3) == 7
    assert zonotope_lattice_points(STANDARD_BASIS) == 4
    assert zonotope_lattice_points(X1) == 4
    total = sum(zonotope_volume_in_span(X3, s) for s in rational_subspaces(X3))
    assert total == 7


def test_lcm_of_determinants():
    assert lcm_of_determinants(X1) == 2
    assert lcm_of_determinants(family_Xk(3)) == 3


@given(planar_lists())
def test_volume_counts_and_decomposition(X):
    vol = zonotope_volume(X)
    pts = zonotope_lattice_points(X)
    assert pts == hull_point_count(X)
    assert sum(zonotope_volume_in_span(X, s) for s in rational_subspaces(X)) == pts
    if is_unimodular(X):
        assert vol == len(bases(X))


@given(planar_lists(), st.randoms())
def test_permutation_invariance(X, rnd):
    perm = list(range(X.n))
    rnd.shuffle(perm)
    Y = X.permuted(perm)
    assert zonotope_volume(Y) == zonotope_volume(X)
    assert len(bases(Y)) == len(bases(X))
    back = sorted(sorted(perm[i] for i in C) for C, _ in cocircuits(Y))
    assert back == sorted(sorted(C) for C, _ in cocircuits(X))


def test_cocircuit_brute_force_oracle():
    X = random_pointed(2)
    # a cocircuit is a minimal set whose removal drops the rank
    want = set()
    for k in range(1, X.n + 1):
        for A in combinations(range(X.n), k):
            rest = X.sub(X.complement(A))
            if (linalg.rank(rest) if rest else 0) < X.d and not any(B < frozenset(A) for B in want):
                want.add(frozenset(A))
    assert {C for C, _ in cocircuits(X)} == want
    assert all(Y in upset_L(X) for Y in want)
