import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_bands(rng, n, diag_boost=0.0):
    """Random Toeplitz bands; diag_boost > 0 makes both CSCS parts PD."""
    bands = rng.standard_normal(2 * n - 1)
    if diag_boost:
        bands[n - 1] = np.abs(bands).sum() + diag_boost
    return bands


def max_abs(a):
    a = np.asarray(a)
    return float(np.abs(a).max()) if a.size else 0.0
