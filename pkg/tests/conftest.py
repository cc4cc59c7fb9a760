import numpy as np
import pytest

from tdsmooth.solver import SpectralCache
from tdsmooth.synth import Awgn, apply_noise, canonical_surface


@pytest.fixture(scope="session")
def surface():
    return canonical_surface()


@pytest.fixture(scope="session")
def cache(surface):
    return SpectralCache(*surface.shape)


@pytest.fixture(scope="session")
def awgn_instances(surface):
    """Canonical fixture under unit AWGN for seeds 0..9."""
    return [apply_noise(surface, Awgn(1.0, seed=s)) for s in range(10)]


def rel_err(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)
