import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_upper_triangular(n, rng, scale=1.0):
    """Random R with positive diagonal for property checks."""
    r = np.triu(rng.standard_normal((n, n)), 1)
    r[np.diag_indices(n)] = scale * np.abs(rng.standard_normal(n)) + 0.05
    return r
