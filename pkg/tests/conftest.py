import pytest

from equivdiv.groupspec import realize


@pytest.fixture(scope="session")
def a5():
    # shared so the multiplier is computed once per session
    return realize("A5")
