import pytest

from pellint import PrecisionContext


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)


@pytest.fixture(scope="session")
def ctx50():
    return PrecisionContext(50)


def close(x, y, tol):
    return abs(x - y) <= tol
