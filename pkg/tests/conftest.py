import pytest

from simpdiff.corpus import base_presentations
from simpdiff.fixtures import load_fixtures


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


@pytest.fixture(scope="session")
def base():
    return base_presentations(4, 4)
