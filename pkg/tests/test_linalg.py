from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from superverma.errors import DimensionError, SingularMatrixError
from superverma.linalg import (RatMatrix, det, kernel_basis, nonsingular_principal_subset,
                               rank, rat, rref, solve, solve_consistent)


def leibniz(rows):
    """Permutation expansion, kept independent of the elimination code."""
    n = len(rows)
    total = F(0)
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = F(sign)
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def square(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    return [[draw(fractions) for _ in range(n)] for _ in range(n)]


def test_det_small_cases():
    assert det(RatMatrix.from_rows([])) == 1
    assert det(RatMatrix.from_rows([[F(1, 2), 3], [4, 5]])) == F(5, 2) - 12
    assert det(RatMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert det(RatMatrix.from_rows([[1, 2], [2, 4]])) == 0


def test_det_rejects_rectangular():
    with pytest.raises(DimensionError):
        det(RatMatrix.from_rows([[1, 2, 3]]))


def test_floats_refused():
    with pytest.raises(TypeError):
        rat(0.5)


@settings(max_examples=60, deadline=None)
@given(square())
def test_det_matches_permutation_expansion(rows):
    assert det(RatMatrix.from_rows(rows, cols=len(rows))) == leibniz(rows)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n))))
def test_det_multiplicative(pair):
    a, b = (RatMatrix.from_rows(x) for x in pair)
    assert det(a @ b) == det(a) * det(b)


@settings(max_examples=40, deadline=None)
@given(square(4).filter(lambda r: len(r) >= 2))
def test_det_alternating(rows):
    swapped = [rows[1], rows[0]] + rows[2:]
    assert det(RatMatrix.from_rows(swapped)) == -det(RatMatrix.from_rows(rows))
    repeated = [rows[0], rows[0]] + rows[2:]
    assert det(RatMatrix.from_rows(repeated)) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_kernel_vectors_are_killed(r, c, data):
    rows = [[data.draw(st.integers(-2, 2)) for _ in range(c)] for _ in range(r)]
    m = RatMatrix.from_rows(rows)
    ker = kernel_basis(m)
    assert len(ker) + rank(m) == c
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=40, deadline=None)
@given(square(4).filter(lambda r: len(r) >= 1), st.data())
def test_solve_roundtrip(rows, data):
    m = RatMatrix.from_rows(rows)
    b = [data.draw(fractions) for _ in rows]
    if det(m) == 0:
        with pytest.raises(SingularMatrixError):
            solve(m, b)
    else:
        assert m.apply(solve(m, b)) == tuple(b)


def test_solve_consistent_rectangular():
    m = RatMatrix.from_rows([[1, 1, 0], [0, 0, 1]])
    x = solve_consistent(m, [3, 4])
    assert m.apply(x) == (3, 4)
    assert solve_consistent(RatMatrix.from_rows([[1, 1], [2, 2]]), [1, 3]) is None


def test_rref_pivots():
    a, piv = rref(RatMatrix.from_rows([[0, 2, 4], [0, 1, 2], [1, 0, 1]]))
    assert piv == [0, 1]
    assert a[0] == [1, 0, 1] and a[1] == [0, 1, 2]


def test_principal_subset_hyperbolic_pair():
    # zero diagonal, so no single index works on its own
    m = RatMatrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    keep = nonsingular_principal_subset(m)
    assert sorted(keep) == [0, 1]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_principal_subset_of_gram(r, c, data):
    # B B^T is symmetric with rank rank(B)
    b = RatMatrix.from_rows([[data.draw(st.integers(-2, 2)) for _ in range(c)] for _ in range(r)])
    g = b @ b.transpose()
    keep = nonsingular_principal_subset(g)
    assert len(keep) == rank(g)
    assert det(g.submatrix(keep, keep)) != 0
