import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simpdiff.combinatorics import (OrdinalMap, allowed_transposition, canonical_labeled_partitions,
                                    classify_sequence, decalage_reindex, dk_action, integer_partitions,
                                    is_canonical, labeled_partitions, set_partitions,
                                    subset_of_surjection, surjection_of_subset, unravel)
from simpdiff.oracles import brute_unravel_sign, free_graded_dimension


def coface(n, i):
    return OrdinalMap.coface(n, i)


def codeg(n, j):
    return OrdinalMap.codegeneracy(n, j)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cosimplicial_identities_of_ordinal_maps(n):
    # d^j d^i = d^i d^{j-1} for i < j
    for j in range(n + 2):
        for i in range(j):
            assert coface(n + 1, j).compose(coface(n, i)) == coface(n + 1, i).compose(coface(n, j - 1))
    # s^j s^i = s^i s^{j+1} for i <= j
    for j in range(n):
        for i in range(j + 1):
            assert codeg(n - 1, j).compose(codeg(n, i)) == codeg(n - 1, i).compose(codeg(n, j + 1))
    # s^j d^i: identity when i in {j, j+1}
    for j in range(n):
        for i in (j, j + 1):
            assert codeg(n - 1, j).compose(coface(n, i)) == OrdinalMap.identity(n - 1)


def test_epi_mono_factorization():
    theta = OrdinalMap(3, 4, (0, 0, 2, 4))
    epi, mono = theta.epi_mono()
    assert epi.is_surjective() and mono.is_injective()
    assert mono.compose(epi) == theta


def test_subset_surjection_round_trip():
    for alpha in [(1,), (2, 3), (1, 2, 4)]:
        eps = surjection_of_subset(alpha, 4)
        assert subset_of_surjection(eps) == alpha


def test_dk_action_on_faces():
    # the top cell of [2] under d^0, d^1, d^2
    top = (1, 2)
    assert dk_action(coface(2, 2), top) is None
    assert dk_action(coface(2, 1), top) is None
    assert dk_action(coface(2, 0), top) == ("boundary", (1,))
    assert dk_action(OrdinalMap.identity(2), top) == ("id", top)


def test_classify_sequence():
    assert classify_sequence([(1,), (2, 3)], 3) == "partition"
    assert classify_sequence([(1, 2), (2, 3)], 3) == "overlap"
    assert classify_sequence([(1,), (3,)], 3) == "non-covering"


def test_allowed_transposition():
    seq = (((1, 2), 0), ((3,), 0))
    assert allowed_transposition(seq, 1) is None
    assert allowed_transposition(seq, 2) == (((1, 3), 0), ((2,), 0))


def test_unravel_small_example():
    canon, sign = unravel((((2,), 0), ((1, 3), 0)), 3)
    assert canon == (((1,), 0), ((2, 3), 0))
    assert sign == -1


def test_unravel_equal_odd_blocks_vanish():
    # two blocks of size one with the same label: xi * xi = 0
    assert unravel((((1,), 0), ((2,), 0)), 2)[1] == 0
    # blocks of size two are even: the square survives
    assert unravel((((1, 2), 0), ((3, 4), 0)), 4)[1] == 1


def test_unravel_super_parity_flips_vanishing():
    # an odd coordinate in degree one gives an even generator, whose square survives
    odd = lambda k, lab: 1
    assert unravel((((1,), 0), ((2,), 0)), 2, odd)[1] == 1


def test_canonical_fixed_points():
    for seq in canonical_labeled_partitions(4, [2, 1, 1, 1]):
        assert is_canonical(seq, 4)
        assert unravel(seq, 4) == (seq, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("ranks", [(1, 1, 1, 1), (2, 0, 1, 0), (0, 2, 2, 1), (3, 1, 0, 2)])
def test_canonical_count_is_free_dimension(n, ranks):
    assert len(canonical_labeled_partitions(n, ranks[:n])) == free_graded_dimension(n, ranks[:n])


def test_enumeration_counts():
    assert sum(1 for _ in set_partitions(4)) == 15
    # parts come in non-decreasing order, the order of canonical blocks
    assert sorted(integer_partitions(4)) == sorted([(4,), (1, 3), (2, 2), (1, 1, 2), (1, 1, 1, 1)])
    # labelled partitions of 3 with one label per block size
    assert sum(1 for _ in labeled_partitions(3, [1, 1, 1])) == 5


@st.composite
def labeled(draw):
    n = draw(st.integers(1, 6))
    perm = draw(st.permutations(range(1, n + 1)))
    cuts = sorted(draw(st.sets(st.integers(1, n - 1), max_size=n - 1))) if n > 1 else []
    blocks, start = [], 0
    for c in cuts + [n]:
        blocks.append(tuple(sorted(perm[start:c])))
        start = c
    labels = [draw(st.integers(0, 2)) for _ in blocks]
    order = draw(st.permutations(range(len(blocks))))
    return n, tuple((blocks[i], labels[i]) for i in order)


@given(labeled())
@settings(max_examples=200, deadline=None)
def test_unravel_matches_brute_force(case):
    n, seq = case
    canon, sign = unravel(seq, n)
    bcanon, bsign = brute_unravel_sign(seq, n)
    assert sign == bsign
    if sign:
        assert canon == bcanon


@given(labeled(), st.integers(1, 5))
@settings(max_examples=100, deadline=None)
def test_transposition_costs_a_sign(case, j):
    n, seq = case
    if j >= n:
        return
    moved = allowed_transposition(seq, j)
    if moved is None:
        return
    c1, s1 = unravel(seq, n)
    c2, s2 = unravel(moved, n)
    assert s1 == -s2
    if s1:
        assert c1 == c2


def test_decalage_reindex():
    assert decalage_reindex(2, 3, "left", "face", 1) == 1
    assert decalage_reindex(2, 3, "right", "face", 0) == 3
    assert decalage_reindex(2, 3, "right", "degeneracy", 3) == 6
    with pytest.raises(ValueError):
        decalage_reindex(2, 3, "left", "face", 3)
    with pytest.raises(ValueError):
        decalage_reindex(2, 3, "middle", "face", 0)
