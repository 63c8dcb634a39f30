import numpy as np
import pytest

from univqg.linalg import Tolerance


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def tol():
    return Tolerance()
