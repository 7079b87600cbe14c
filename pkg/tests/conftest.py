import pytest

from ybrace.family import construct
from ybrace.gbrace import GBrace


@pytest.fixture(scope="session")
def fam23():
    return construct([2, 3])


@pytest.fixture(scope="session")
def fam235():
    return construct([2, 3, 5])


@pytest.fixture(scope="session")
def gb23(fam23):
    return GBrace(fam23)


@pytest.fixture(scope="session")
def gb235(fam235):
    return GBrace(fam235)
