import random

import pytest

from braidorders import catalog, frozen_convention


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture(scope="session")
def specs():
    return catalog()


@pytest.fixture(scope="session")
def conv3():
    return frozen_convention(3)


@pytest.fixture(scope="session")
def conv4():
    return frozen_convention(4)
