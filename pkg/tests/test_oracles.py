import random
from fractions import Fraction

import pytest

from simpdiff.corpus import affine_law, conjugate_law, heisenberg_constants, so3_constants
from simpdiff.linalg import Matrix
from simpdiff.oracles import (abelian_law, bch_order2, brute_unravel_sign, check_lie_constants,
                              commutator_constants, formal_inverse, free_graded_dimension, gx,
                              relation_span_rank)
from simpdiff.graded_poly import Poly


def test_group_laws_are_associative():
    assert abelian_law(2).is_associative(5)
    assert affine_law().is_associative(5)
    # second order BCH is exact for a two-step nilpotent algebra
    assert bch_order2(heisenberg_constants()).is_associative(6)
    # for so(3) it is only good up to weight 2
    law = bch_order2(so3_constants())
    assert law.is_associative(2)
    assert not law.is_associative(3)


def test_conjugated_laws_stay_associative():
    law = conjugate_law(affine_law(), random.Random(2), 4)
    assert law.is_associative(4)


def test_formal_inverse():
    law = affine_law()
    inv = formal_inverse(law, 4)
    xs = [Poly.gen(gx(i), truncation=4) for i in range(law.dim)]
    prod = law.apply(xs, inv, 4)
    assert all(p.is_zero() for p in prod)


def test_lie_constants_checked():
    check_lie_constants(so3_constants())
    bad = [[[0, 1], [0, 0]], [[0, 0], [0, 0]]]
    with pytest.raises(ValueError):
        check_lie_constants(bad)


def test_commutator_constants_of_upper_triangular():
    e12 = Matrix.from_dense([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    e23 = Matrix.from_dense([[0, 0, 0], [0, 0, 1], [0, 0, 0]])
    e13 = Matrix.from_dense([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    c = commutator_constants([e12, e23, e13])
    assert c[0][1] == [0, 0, 1]
    assert c[1][0] == [0, 0, -1]
    assert c[0][2] == [0, 0, 0]


def test_brute_force_small_cases():
    assert brute_unravel_sign((((2,), 0), ((1, 3), 0)), 3) == ((((1,), 0), ((2, 3), 0)), -1)
    assert brute_unravel_sign((((1,), 0), ((2,), 0)), 2)[1] == 0
    assert brute_unravel_sign((((1,), 0), ((2,), 1)), 2)[1] == 1
    assert brute_unravel_sign((((1,), 1), ((2,), 0)), 2)[1] == -1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("ranks", [(1, 0, 0, 0), (2, 1, 0, 0), (1, 1, 1, 1), (2, 2, 2, 2)])
def test_relation_corank_is_free_dimension(n, ranks):
    _, _, corank = relation_span_rank(n, ranks[:n])
    assert corank == free_graded_dimension(n, ranks[:n])


def test_free_graded_dimension():
    # Lambda(a, b): 1, 2, 1, 0
    assert [free_graded_dimension(n, [2]) for n in range(4)] == [1, 2, 1, 0]
    # S(x) with x in degree 2
    assert [free_graded_dimension(n, [0, 1]) for n in range(5)] == [1, 0, 1, 0, 1]
