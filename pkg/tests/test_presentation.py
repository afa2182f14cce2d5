import random

import pytest

from simpdiff.corpus import base_presentations, frame_change, fuzz_presentations, product_presentation
from simpdiff.graded_poly import Poly
from simpdiff.linalg import Matrix
from simpdiff.presentation import FramedPresentation, PresentationError, linear_presentation, validate_presentation


@pytest.mark.parametrize("name", ["abelian1", "abelian2", "heisenberg", "affine", "shifted", "odd_abelian"])
def test_base_presentations_validate(base, name):
    rep = validate_presentation(base[name])
    assert rep.ok, rep.failures[:3]


def test_linearity(base):
    assert base["abelian2"].is_linear()
    assert base["shifted"].is_linear()
    assert not base["heisenberg"].is_linear()


def test_fuzzed_presentations_validate():
    for label, P in fuzz_presentations(seed=5, count=12, truncation=3):
        rep = validate_presentation(P)
        assert rep.ok, (label, rep.failures[:3])


def test_frame_change_of_frame_change_validates(base):
    rng = random.Random(3)
    P = frame_change(frame_change(base["affine"], rng), rng)
    assert validate_presentation(P).ok


def test_product_validates(base):
    P = product_presentation(base["heisenberg"], base["shifted"])
    assert P.ranks == [4, 1, 1]
    assert validate_presentation(P).ok


def test_corrupted_d0_is_reported(base):
    P = base["heisenberg"]
    d0 = {n: dict(images) for n, images in P.d0.items()}
    x = P.coordinate((1,), 2)
    # changing level 2 alone breaks the relations with level 3
    d0[2][x] = d0[2][x] + Poly.product_of([P.coordinate((1,), 0), P.coordinate((2,), 1)])
    bad = FramedPresentation(P.ranks, P.boundary, P.truncation, d0, P.parities, P.names)
    rep = validate_presentation(bad)
    assert not rep.ok
    assert rep.failures[0][1]


def test_wrong_linear_part_is_reported():
    P = linear_presentation([1, 1], {2: Matrix.from_dense([[1]])}, 3, 3)
    d0 = {n: dict(images) for n, images in P.d0.items()}
    x = P.coordinate((1,), 0)
    d0[2][x] = d0[2][x].scale(2)
    rep = validate_presentation(FramedPresentation(P.ranks, P.boundary, 3, d0))
    assert not rep.ok


def test_bad_boundary_is_rejected():
    with pytest.raises(PresentationError):
        FramedPresentation([1, 1, 1], {2: Matrix.from_dense([[1]]), 3: Matrix.from_dense([[1]])}, 3, {})
