import pytest

from multiseq.corpus import random_corpus
from multiseq.fixtures import fixtures


@pytest.fixture
def fx():
    return fixtures()


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(200, seed=0)
