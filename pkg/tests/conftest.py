import pytest

from liebialg import schrodinger, families


@pytest.fixture(scope="session")
def L():
    return schrodinger.algebra()


@pytest.fixture(scope="session")
def general_family(L):
    return families.family("general", L)
