import pytest

from torelli import catalogue


@pytest.fixture(scope="session")
def entries_g2():
    return {e.name: e for e in catalogue.load(2)}


@pytest.fixture(scope="session")
def entries_g3():
    return {e.name: e for e in catalogue.load(3)}


@pytest.fixture(scope="session")
def pool_g3():
    return catalogue.torelli_pool(3, 20)
