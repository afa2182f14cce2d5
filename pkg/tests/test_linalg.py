from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simpdiff.linalg import (EchelonBasis, Matrix, inverse, nullspace, nullspace_with_free, rank,
                             rref, solve)
from simpdiff.rationals import format_rational, parse_rational


def test_parse_and_format_rationals():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-2") == -2
    assert parse_rational(5) == 5
    assert format_rational(Fraction(-4, 6)) == "-2/3"
    assert format_rational(Fraction(7)) == "7"


@pytest.mark.parametrize("bad", [0.5, True, "1/0", "abc", None])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_small_kernels():
    assert nullspace(Matrix.from_dense([[1, 0], [0, 1]])) == []
    assert nullspace(Matrix.from_dense([[1, 2], [1, 2]])) == [{0: -2, 1: 1}]
    basis, free = nullspace_with_free(Matrix.from_dense([[2, 2, 2], [3, 3, 3]]))
    assert free == [1, 2]
    assert basis == [{0: -1, 1: 1}, {0: -1, 2: 1}]
    assert nullspace(Matrix(0, 2)) == [{0: 1}, {1: 1}]


def test_inverse_and_solve():
    m = Matrix.from_dense([[2, 1], [1, 1]])
    assert inverse(m) @ m == Matrix.identity(2)
    assert solve(m, {0: Fraction(3), 1: Fraction(2)}) == {0: 1, 1: 1}
    assert solve(Matrix.from_dense([[1, 1], [1, 1]]), {0: 1, 1: 2}) is None
    with pytest.raises(ValueError):
        inverse(Matrix.from_dense([[1, 2], [2, 4]]))


def test_rref_is_reduced():
    rows, piv = rref(Matrix.from_dense([[0, 2, 4], [1, 1, 1], [1, 3, 5]]))
    assert piv == [0, 1]
    assert rows == [{0: 1, 2: -1}, {1: 1, 2: 2}]


def test_echelon_basis_membership():
    e = EchelonBasis()
    assert e.add({0: 1, 1: 1})
    assert e.add({1: 1})
    assert not e.add({0: 3, 1: -2})
    assert e.contains({0: 5})
    assert len(e) == 2


small = st.integers(-3, 3)


@st.composite
def matrices(draw):
    r = draw(st.integers(0, 5))
    c = draw(st.integers(0, 5))
    rows = [[draw(small) for _ in range(c)] for _ in range(r)]
    return Matrix.from_dense(rows, c)


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rank_nullity(m):
    ker = nullspace(m)
    assert rank(m) + len(ker) == m.ncols
    for v in ker:
        assert m.apply(v) == {}
    assert rank(m) == rank(m.transpose())


@given(matrices(), matrices())
@settings(max_examples=50, deadline=None)
def test_matmul_matches_dense(a, b):
    if a.ncols != b.nrows:
        b = Matrix.from_dense([[1] * b.ncols for _ in range(a.ncols)], b.ncols)
    A, B = a.to_dense(), b.to_dense()
    dense = [[sum((A[i][k] * B[k][j] for k in range(a.ncols)), Fraction(0)) for j in range(b.ncols)]
             for i in range(a.nrows)]
    assert (a @ b).to_dense() == dense
