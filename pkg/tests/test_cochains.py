import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simpdiff.cochains import (Cochain, InsufficientTruncation, NotNormalized, covers, cup, delta,
                               is_normalized, normalize_retract, reduce_mod_Jhat)
from simpdiff.graded_poly import Poly, monomials_in
from simpdiff.lie import ce_algebra
from simpdiff.oracles import abelian_law, nerve_from_group_law


def random_cochain(P, rng, level, normalized=False, terms=3):
    if level == 0:
        return Cochain(0, Poly.const(rng.randint(-2, 2), P.truncation))
    pool = []
    for length in range(1, P.truncation + 1):
        pool.extend(m for m in monomials_in(P.coordinates(level), length)
                    if not normalized or covers(m, level))
        if len(pool) > 80:
            break
    out = {}
    for m in rng.sample(pool, min(terms, len(pool))):
        out[m] = Fraction(rng.randint(-3, 3) or 1, rng.choice([1, 2]))
    return Cochain(level, Poly(out, P.truncation))


def test_coboundary_of_square(base):
    P = base["abelian1"]
    x = P.coordinate((1,), 0)
    got = delta(P, Cochain(1, Poly.gen(x) ** 2)).poly
    assert got == Poly.product_of([P.coordinate((1,), 0), P.coordinate((2,), 0)], -2)


def test_coboundary_of_coordinate_is_zero_on_abelian(base):
    P = base["abelian2"]
    for lab in range(2):
        assert delta(P, Cochain(1, Poly.gen(P.coordinate((1,), lab)))).poly.is_zero()


seeds = st.integers(0, 10 ** 6)
NAMES = ["heisenberg", "affine", "shifted", "odd_abelian"]


@given(seeds, st.sampled_from(NAMES), st.integers(0, 2))
@settings(max_examples=40, deadline=None)
def test_delta_squared_vanishes(base, seed, name, level):
    P = base[name]
    f = random_cochain(P, random.Random(seed), level)
    assert delta(P, delta(P, f)).poly.is_zero()


@given(seeds, st.sampled_from(["heisenberg", "affine", "shifted"]), st.integers(0, 1), st.integers(0, 1))
@settings(max_examples=40, deadline=None)
def test_cup_leibniz(base, seed, name, p, q):
    P = base[name]
    rng = random.Random(seed)
    f, g = random_cochain(P, rng, p), random_cochain(P, rng, q)
    lhs = delta(P, cup(P, f, g))
    rhs = cup(P, delta(P, f), g) + cup(P, f, delta(P, g)).scale((-1) ** p)
    assert lhs == rhs


@given(seeds, st.sampled_from(["heisenberg", "abelian2"]))
@settings(max_examples=25, deadline=None)
def test_cup_associative(base, seed, name):
    P = base[name]
    rng = random.Random(seed)
    f, g, h = (random_cochain(P, rng, 1) for _ in range(3))
    assert cup(P, cup(P, f, g), h) == cup(P, f, cup(P, g, h))


@given(seeds, st.sampled_from(NAMES), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_normalize_retract_is_a_projection(base, seed, name, level):
    P = base[name]
    f = random_cochain(P, random.Random(seed), level, terms=4)
    g = normalize_retract(P, f)
    assert is_normalized(g)
    for j in range(level):
        assert P.pull_degeneracy(g.poly, level - 1, j).is_zero()
    assert normalize_retract(P, g) == g
    h = random_cochain(P, random.Random(seed + 1), level, normalized=True)
    assert normalize_retract(P, h) == h


@given(seeds, st.sampled_from(["heisenberg", "affine", "shifted"]), st.integers(0, 2))
@settings(max_examples=40, deadline=None)
def test_normalized_closed_under_delta(base, seed, name, level):
    P = base[name]
    f = random_cochain(P, random.Random(seed), level, normalized=True)
    assert is_normalized(delta(P, f))


@pytest.mark.parametrize("name", ["heisenberg", "affine", "shifted", "odd_abelian"])
def test_reduction_is_a_chain_map(base, name):
    P = base[name]
    C = ce_algebra(P, 3 if name == "shifted" else 1)
    rng = random.Random(11)
    for level in (1, 2):
        for _ in range(8):
            f = random_cochain(P, rng, level, normalized=True)
            lhs = reduce_mod_Jhat(P, delta(P, f))
            rhs = C.d(reduce_mod_Jhat(P, f))
            assert lhs == rhs


def test_reduction_of_twisted_fixture_is_a_chain_map(fixtures):
    P = fixtures.presentations["twisted"]
    C = ce_algebra(P, 1)
    rng = random.Random(4)
    for _ in range(10):
        f = random_cochain(P, rng, 1, normalized=True)
        assert reduce_mod_Jhat(P, delta(P, f)) == C.d(reduce_mod_Jhat(P, f))


def test_reduce_rejects_unnormalized(base):
    P = base["abelian1"]
    f = Cochain(2, Poly.gen(P.coordinate((1,), 0)))
    with pytest.raises(NotNormalized):
        reduce_mod_Jhat(P, f)


def test_reduce_needs_truncation():
    P = nerve_from_group_law(abelian_law(1), 1, 2)
    f = Cochain(2, Poly.product_of([P.coordinate((1,), 0), P.coordinate((2,), 0)]))
    with pytest.raises(InsufficientTruncation):
        reduce_mod_Jhat(P, f)


def test_overlap_dies(base):
    P = base["heisenberg"]
    # both factors contain the index 1
    f = Cochain(1, Poly.product_of([P.coordinate((1,), 0), P.coordinate((1,), 1)]))
    assert reduce_mod_Jhat(P, f).is_zero()


def test_cochain_level_mismatch():
    with pytest.raises(ValueError):
        Cochain(1, Poly({})) + Cochain(2, Poly({}))
