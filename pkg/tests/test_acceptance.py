"""The ten acceptance criteria, one test each.

Every test prints the verdict line of its criterion, so ``pytest -s`` shows
the same report as ``simpdiff selftest``.  Time limits are part of each
criterion and are enforced by the runner.
"""

import pytest

from simpdiff.acceptance import CRITERIA, run_criterion

LIMITS = {1: 1.0, 2: 1.0, 8: 10.0, 9: 5.0}


def test_all_ten_criteria_are_registered():
    assert [c.number for c in CRITERIA] == list(range(1, 11))
    for c in CRITERIA:
        assert c.time_limit == LIMITS.get(c.number)


@pytest.mark.parametrize("criterion", CRITERIA, ids=[c.key for c in CRITERIA])
def test_criterion(fixtures, criterion):
    result = run_criterion(criterion, fixtures)
    print(result.line())
    assert result.passed, result.detail
