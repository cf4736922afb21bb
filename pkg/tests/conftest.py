import pytest

from tpcurves import builtin_scene


@pytest.fixture(scope="session")
def scene():
    return builtin_scene()
