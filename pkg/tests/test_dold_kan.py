import random
from fractions import Fraction

import pytest

from simpdiff.corpus import random_complex
from simpdiff.dold_kan import (ChainComplex, CochainComplex, check_cosimplicial_identities,
                               check_simplicial_identities, dk_basis, denormalize,
                               denormalize_cochain, normalize, normalize_cochain, overlapping_basis,
                               shuffle_sign)
from simpdiff.linalg import Matrix


def test_basis_sizes():
    # K(E)_n has sum_k C(n, k) r_k elements
    assert len(dk_basis([1, 2], 3)) == 1 + 3 * 2
    assert len(dk_basis([0, 1, 1], 2)) == 2 + 1


def test_face_of_top_cell_is_boundary():
    E = ChainComplex([0, 1, 1], {2: Matrix.from_dense([[3]])})
    V = denormalize(E, 2)
    idx = {b: i for i, b in enumerate(dk_basis(E.ranks, 2))}
    top = {idx[((1, 2), 0)]: Fraction(1)}
    low = {b: i for i, b in enumerate(dk_basis(E.ranks, 1))}
    assert V.faces[2][0].apply(top) == {low[((1,), 0)]: 3}
    assert V.faces[2][1].apply(top) == {}
    assert V.faces[2][2].apply(top) == {}


@pytest.mark.parametrize("seed", range(8))
def test_round_trip(seed):
    rng = random.Random(seed)
    ranks, boundary = random_complex(rng, 3, 3)
    E = ChainComplex([0] + ranks, boundary)
    V = denormalize(E, 4)
    assert check_simplicial_identities(V) == []
    N, _ = normalize(V)
    top = len(ranks)
    assert N.ranks[1:top + 1] == ranks
    assert not any(N.ranks[top + 1:])
    for k in range(1, len(ranks) + 1):
        assert N.d(k) == E.d(k)


@pytest.mark.parametrize("seed", range(5))
def test_cochain_round_trip(seed):
    rng = random.Random(100 + seed)
    ranks, boundary = random_complex(rng, 2, 3)
    Y = CochainComplex([0] + ranks, {k - 1: m.transpose() for k, m in boundary.items()})
    X = denormalize_cochain(Y, 4)
    assert check_cosimplicial_identities(X) == []
    M, _ = normalize_cochain(X)
    assert M.ranks[:len(Y.ranks)] == Y.ranks
    assert not any(M.ranks[len(Y.ranks):])
    for k in range(len(ranks)):
        assert M.d(k) == Y.d(k)


def test_corrupted_face_is_caught():
    E = ChainComplex([0, 1, 1], {2: Matrix.from_dense([[1]])})
    V = denormalize(E, 3)
    V.faces[3][1] = V.faces[3][1].scale(2)
    assert check_simplicial_identities(V)


def test_boundary_shape_is_checked():
    with pytest.raises(ValueError):
        ChainComplex([0, 1, 2], {2: Matrix.from_dense([[1]])})


def test_shuffle_sign():
    assert shuffle_sign((1,), (2,)) == 1
    assert shuffle_sign((2,), (1,)) == -1
    assert shuffle_sign((1, 3), (2,)) == -1
    assert shuffle_sign((1, 2), (2,)) == 0


def test_overlapping_pairs():
    pairs = overlapping_basis([0, 1], 2)
    subsets = {(a[0], b[0]) for a, b in pairs}
    # only coordinate subsets {1}, {2} exist, which never overlap while covering
    assert subsets == set()
    pairs = overlapping_basis([0, 1, 1], 2)
    assert (((1, 2), 0), ((1, 2), 0)) in pairs
