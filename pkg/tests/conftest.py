import random

import pytest

from twistrb import corpus


@pytest.fixture(scope="session")
def trb_corpus():
    """Named (setup, operator) pairs passing the twisted Rota-Baxter check."""
    return corpus.trb_instances()


@pytest.fixture(scope="session")
def algebras():
    return dict(corpus.named_algebras())


@pytest.fixture()
def rng():
    return random.Random(20240817)
