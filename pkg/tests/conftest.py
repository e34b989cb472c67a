import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)
