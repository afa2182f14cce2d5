import random
from fractions import Fraction

import pytest

from simpdiff.cosimplicial import (CosimplicialError, DoldKanDecomposition, FiniteCosimplicialAlgebra,
                                   Normalization, abstract_diff, aw_pair, cochain_algebra, counit_check,
                                   denormalized_dga, dga_from_free, is_infinitesimal, odd_line_identities,
                                   odd_line_model, sh_pure, transport_basis, validate_cosimplicial)
from simpdiff.graded_poly import Generator, Poly
from simpdiff.linalg import Matrix, rank
from simpdiff.oracles import abelian_law, nerve_from_group_law


def exterior_line():
    x = Generator(("x",), 1, 1, 0)
    return dga_from_free([x], {x: Poly({})}, 3)


def test_odd_line_model_is_valid():
    X = odd_line_model(3)
    assert X.dims == [2, 4, 8, 16]
    assert validate_cosimplicial(X) == []
    assert odd_line_identities(X) == []


def test_odd_line_fixture(fixtures):
    X = fixtures.cosimplicial["odd_line"]
    assert X.level_cap >= 5
    assert odd_line_identities(X) == []
    assert is_infinitesimal(X).infinitesimal


def test_odd_line_abstract_is_exterior():
    res = abstract_diff(odd_line_model(3))
    # the odd line is already infinitesimal, so the ideal is trivial
    assert res.ideal_dims == [0, 0, 0, 0]
    assert res.dga.dims == [2, 2, 2, 2]
    assert res.dga.check() == []


def test_cochains_are_not_infinitesimal():
    X = cochain_algebra(nerve_from_group_law(abelian_law(1), 3, 3), 3)
    rep = is_infinitesimal(X)
    assert not rep.infinitesimal
    level, a, _, b, _ = rep.witness
    assert set(a) & set(b)


def test_abstract_on_abelian_cochains(fixtures):
    res = abstract_diff(fixtures.cosimplicial["abelian_cochains"])
    # Lambda(x) with x in degree 1
    assert res.dga.dims == [1, 1, 0, 0]
    assert res.normalized_dims == [1, 4, 6, 4]
    assert res.dga.check() == []
    assert res.dga.differential[0].is_zero()


def test_counit_on_exterior_line():
    rep = counit_check(exterior_line())
    assert rep.ok, rep.messages


def test_counit_on_the_dga_corpus(fixtures):
    assert len(fixtures.dgas) >= 10
    for name, Y in sorted(fixtures.dgas.items()):
        assert Y.check() == [], name
        rep = counit_check(Y)
        assert rep.ok, (name, rep.messages)


def test_denormalized_is_infinitesimal(fixtures):
    for name in ("heisenberg", "sphere", "mixed"):
        X = denormalized_dga(fixtures.dgas[name])
        assert validate_cosimplicial(X, sample=30) == []
        assert is_infinitesimal(X).infinitesimal, name


@pytest.mark.parametrize("seed", range(3))
def test_abstract_is_basis_independent(fixtures, seed):
    small_cochains = cochain_algebra(nerve_from_group_law(abelian_law(1), 2, 2), 2)
    for X in (small_cochains, fixtures.cosimplicial["exterior_line"], odd_line_model(2)):
        ref = abstract_diff(X)
        Xt = transport_basis(X, random.Random(seed))
        assert validate_cosimplicial(Xt, sample=20) == []
        got = abstract_diff(Xt)
        assert got.dga.dims == ref.dga.dims
        assert got.ideal_dims == ref.ideal_dims
        for p, M in ref.dga.differential.items():
            assert rank(got.dga.differential[p]) == rank(M)


@pytest.mark.parametrize("name", ["exterior_line", "abelian_cochains"])
def test_shuffle_undoes_alexander_whitney(fixtures, name):
    X = fixtures.cosimplicial[name]
    N = Normalization(X)
    D = DoldKanDecomposition(N)
    for p in range(X.level_cap + 1):
        for q in range(X.level_cap + 1 - p):
            for i, f in enumerate(N.bases[p]):
                for j, g in enumerate(N.bases[q]):
                    u, v = aw_pair(N, p, f, q, g)
                    assert sh_pure(D, p + q, u, v) == {(p, i, q, j): Fraction(1)}


def test_decomposition_reassembles(fixtures):
    X = fixtures.cosimplicial["exterior_line"]
    D = DoldKanDecomposition(Normalization(X))
    for n in range(X.level_cap + 1):
        _, M = D.assembled(n)
        assert M.shape == (X.dims[n], X.dims[n])
        assert rank(M) == X.dims[n]


def test_bad_shapes_are_rejected():
    one = Matrix.identity(1)
    with pytest.raises(CosimplicialError):
        FiniteCosimplicialAlgebra([1, 1], lambda n, i, j: {0: Fraction(1)}, {1: [one]}, {0: [one]})


def test_broken_coface_is_reported():
    X = odd_line_model(2)
    X.cofaces[2][0] = X.cofaces[2][0].scale(2)
    assert validate_cosimplicial(X)
