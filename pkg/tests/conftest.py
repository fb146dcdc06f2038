import numpy as np
import pytest

from helpers import make_rng


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng()
