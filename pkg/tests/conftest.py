import random

import pytest

from BCJ import DEFAULT_SEED, genus_context


@pytest.fixture
def rng():
    return random.Random(DEFAULT_SEED)


@pytest.fixture
def ctx2():
    return genus_context(2)


@pytest.fixture
def ctx3():
    return genus_context(3)


@pytest.fixture
def ctx4():
    return genus_context(4)
