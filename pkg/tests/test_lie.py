from fractions import Fraction
from math import comb

import pytest

from simpdiff.cochains import InsufficientTruncation, ce_generator
from simpdiff.corpus import conjugate_law, fuzz_presentations, heisenberg_constants, so3_constants
from simpdiff.graded_poly import Poly
from simpdiff.lie import (BRACKET_SIGN, bracket_table, ce_algebra, ce_algebra_parallel,
                          ce_differential_direct, ce_differential_via_delta, check_d_squared,
                          inclusion_exclusion_extend, lie_bracket_constants, weil_extension)
from simpdiff.oracles import bch_order2, nerve_from_group_law
from simpdiff.presentation import linear_presentation


def test_heisenberg_differential(base):
    C = ce_algebra(base["heisenberg"], 1)
    a, b, c = (ce_generator(base["heisenberg"], 1, i) for i in range(3))
    assert C.differential[c] == -(Poly.gen(a) * Poly.gen(b))
    assert C.differential[a].is_zero() and C.differential[b].is_zero()


def test_affine_bracket(base):
    consts = lie_bracket_constants(ce_algebra(base["affine"], 1))
    # [u, b] = b for (u, b)(u', b') = (u + u' + u u', b + b' + u b')
    assert consts[0][1] == [0, 1]
    assert consts[1][0] == [0, -1]


def test_bracket_sign_convention():
    assert BRACKET_SIGN == -1


@pytest.mark.parametrize("constants", [heisenberg_constants(), so3_constants()])
def test_brackets_recover_bch_input(constants):
    P = nerve_from_group_law(bch_order2(constants), 2, 2)
    got = lie_bracket_constants(ce_algebra(P, 1))
    assert got == [[[Fraction(v) for v in row] for row in mat] for mat in constants]


def test_brackets_survive_conjugation():
    import random

    law = bch_order2(heisenberg_constants())
    P = nerve_from_group_law(conjugate_law(law, random.Random(1), 3), 3, 3)
    got = lie_bracket_constants(ce_algebra(P, 1))
    assert got[0][1] == [0, 0, 1]


def test_shifted_linear_differential(base):
    P = base["shifted"]
    C = ce_algebra(P, 3)
    x1, x2 = ce_generator(P, 1, 0), ce_generator(P, 2, 0)
    assert C.differential[x1] == Poly.gen(x2)
    table = bracket_table(C, 1)
    assert table.entries == {((2,), (0,)): {(1, 0): Fraction(BRACKET_SIGN)}}


def test_paths_agree_on_fuzzed_presentations():
    for label, P in fuzz_presentations(seed=77, count=16, truncation=4):
        top = max([k for k in range(1, len(P.ranks) + 1) if P.rank(k)] or [0])
        for k in range(1, min(3, top, P.truncation - 1, P.max_level - 1) + 1):
            for lab in range(P.rank(k)):
                assert ce_differential_direct(P, k, lab) == ce_differential_via_delta(P, k, lab), label


def test_d_squared_on_fuzzed_presentations():
    for label, P in fuzz_presentations(seed=78, count=12, truncation=4):
        top = max([k for k in range(1, len(P.ranks) + 1) if P.rank(k)] or [0])
        D = min(3, top, P.truncation - 1, P.max_level - 1)
        rep = check_d_squared(ce_algebra(P, D), D)
        assert rep.ok, (label, rep.failures[:2])


def test_d_squared_reports_skipped_generators(base):
    C = ce_algebra(base["shifted"], 1)
    rep = check_d_squared(C, 3)
    assert rep.ok
    # d xi1 = xi2 but the differential of xi2 was not computed
    assert rep.certified_degree == 0
    assert rep.skipped == ["xi1_0", "xi2_0"]


def test_d_squared_catches_a_broken_differential(base):
    C = ce_algebra(base["heisenberg"], 1)
    a, b, c = (ce_generator(base["heisenberg"], 1, i) for i in range(3))
    C.differential[a] = Poly.gen(b) * Poly.gen(c)
    C.differential[b] = Poly.gen(a) * Poly.gen(b)
    C.differential[c] = Poly({})
    rep = check_d_squared(C, 3)
    assert not rep.ok
    assert rep.failures[0] == ("xi_a", "xi_a*xi_b*xi_c")


def test_truncation_guard(base):
    P = nerve_from_group_law(bch_order2(heisenberg_constants()), 2, 3)
    with pytest.raises(InsufficientTruncation):
        ce_differential_direct(P, 2, 0)


def test_parallel_matches_serial(fixtures):
    P = fixtures.presentations["twisted"]
    assert ce_algebra_parallel(P, 1, threads=3).differential == ce_algebra(P, 1).differential


def test_names_follow_the_basis(base):
    C = ce_algebra(base["heisenberg"], 1)
    assert C.render(C.differential[ce_generator(base["heisenberg"], 1, 2)]) == "-xi_a*xi_b"


@pytest.mark.parametrize("m", [1, 2, 3])
def test_weil_counts(m):
    W = weil_extension(ce_algebra(linear_presentation([m], {}, 2, 2), 1))
    for p in range(5):
        for q in range(5 - p):
            want = comb(m, p - q) * comb(m + q - 1, q) if p >= q else 0
            assert len(W.monomials(p, q)) == want


def test_weil_differentials_anticommute(base):
    W = weil_extension(ce_algebra(base["heisenberg"], 1))
    for g in W.generators:
        x = Poly.gen(g)
        assert W.d_v(W.d_v(x)).is_zero()
        assert (W.d_h(W.d_v(x)) + W.d_v(W.d_h(x))).is_zero()
        assert W.d_h(W.d_h(x)).is_zero()


def test_inclusion_exclusion_glues_compatible_maps():
    from simpdiff.graded_poly import Generator

    u, v, w = (Generator((s,), 0, 0, 1) for s in "uvw")
    P = lambda *gs: Poly.product_of(list(gs))
    g1 = [P(u) + P(u, u)]
    g2 = [P(u) + P(u, u) + P(v)]
    glued = inclusion_exclusion_extend([g1, g2], [{u}, {u, v}], [u, v, w])
    assert glued[0] == P(u) + P(u, u) + P(v)
    with pytest.raises(ValueError):
        inclusion_exclusion_extend([[P(u)], [P(u).scale(2)]], [{u}, {u}], [u])
