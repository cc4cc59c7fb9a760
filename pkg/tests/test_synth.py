import math

import numpy as np
import pytest

from tdsmooth.synth import (
    Awgn,
    ComplexNoise,
    Mwgn,
    PoissonNoise,
    SaltPepper,
    apply_noise,
    canonical_axes,
    canonical_surface,
    phantom,
)
from tdsmooth.synth import test_surface as make_surface


def test_surface_point_values():
    g = make_surface([1.0], [1.0])
    assert g[0, 0] == pytest.approx(2.0 + 2.0 * math.sin(2.0) + 10.0, rel=1e-15)
    g = make_surface([4.0], [3.0])
    assert g[0, 0] == pytest.approx(7.0 + 2.0 * math.sin(7.0) + 10.0, rel=1e-15)


def test_canonical_fixture_orientation():
    xs, ys = canonical_axes()
    assert xs.shape == (31,)
    assert ys.shape == (21,)
    assert (xs[0], xs[-1]) == (1.0, 4.0)
    assert (ys[0], ys[-1]) == (1.0, 3.0)
    z = canonical_surface()
    assert z.shape == (31, 21)
    assert z[0, 0] == pytest.approx(2.0 + 2.0 * math.sin(2.0) + 10.0, rel=1e-15)
    assert z[-1, -1] == pytest.approx(7.0 + 2.0 * math.sin(7.0) + 10.0, rel=1e-15)


def test_surface_axis_validation():
    with pytest.raises(ValueError):
        make_surface([], [1.0])
    with pytest.raises(ValueError):
        make_surface([1.0, 0.5], [1.0])


def test_same_seed_is_bit_identical(surface):
    for spec in (
        Awgn(1.0, seed=9),
        Mwgn(0.04, seed=9),
        ComplexNoise(2.0, 1.0, seed=9),
        SaltPepper(0.5, seed=9),
    ):
        a = apply_noise(surface, spec)
        b = apply_noise(surface, spec)
        assert np.array_equal(a, b)


def test_degenerate_sigma_limit(surface):
    out = apply_noise(surface, Awgn(1e-12, seed=0))
    assert np.abs(out - surface).max() <= 1e-10


def test_salt_pepper_full_density():
    rng = np.random.default_rng(0)
    z = rng.uniform(0.2, 0.8, size=(40, 40))
    out = apply_noise(z, SaltPepper(1.0, low=0.0, high=1.0, seed=5))
    assert set(np.unique(out)) <= {0.0, 1.0}
    ones = int((out == 1.0).sum())
    n = out.size
    # salt/pepper split is Bernoulli(1/2) per hit: 3 sigma band around half
    assert abs(ones - n / 2) <= 3 * math.sqrt(n * 0.25)


def test_salt_pepper_default_levels(surface):
    out = apply_noise(surface, SaltPepper(0.9, seed=3))
    hit = out != surface
    assert set(np.unique(out[hit])) <= {surface.min(), surface.max()}
    with pytest.raises(ValueError):
        apply_noise(np.full((4, 4), 1.0), SaltPepper(0.5, seed=0))  # constant grid


def test_awgn_sample_std_band(surface):
    # chi-square band for 651 samples
    for seed in range(10):
        noise = apply_noise(surface, Awgn(1.0, seed=seed)) - surface
        assert 0.92 <= noise.std(ddof=1) <= 1.08


def test_disjoint_seeds_decorrelated(surface):
    draws = [apply_noise(surface, Awgn(1.0, seed=s)) - surface for s in range(10)]
    cors = []
    for i in range(0, 10, 2):
        a, b = draws[i].ravel(), draws[i + 1].ravel()
        cors.append(abs(np.corrcoef(a, b)[0, 1]))
    assert float(np.mean(cors)) < 0.1


def test_complex_noise_zero_mean(surface):
    # n1*n2 has mean 0 and variance E[n2^2] = shape(shape+1) = 6
    total = []
    for seed in range(20):
        total.append((apply_noise(surface, ComplexNoise(2.0, 1.0, seed=seed)) - surface).ravel())
    sample = np.concatenate(total)
    band = 3.0 * math.sqrt(6.0) / math.sqrt(sample.size)
    assert abs(sample.mean()) <= band


def test_mwgn_is_multiplicative(surface):
    out = apply_noise(surface, Mwgn(0.04, seed=2))
    ratio = (out - surface) / surface
    assert 0.03 <= ratio.std(ddof=1) <= 0.05


def test_poisson_noise():
    rng = np.random.default_rng(1)
    z = rng.uniform(0.0, 1.0, size=(32, 32))
    out = apply_noise(z, PoissonNoise(255.0, seed=4))
    assert (out >= 0).all()
    # counts are integers over the photon scale
    assert np.allclose(out * 255.0, np.rint(out * 255.0))
    # mean approximately preserved
    assert abs(out.mean() - z.mean()) <= 0.01
    with pytest.raises(ValueError):
        apply_noise(np.array([[-1.0, 1.0], [1.0, 1.0]]), PoissonNoise(seed=0))


def test_spec_validation():
    with pytest.raises(ValueError):
        Awgn(0.0)
    with pytest.raises(ValueError):
        Mwgn(-1.0)
    with pytest.raises(ValueError):
        ComplexNoise(0.0, 1.0)
    with pytest.raises(ValueError):
        SaltPepper(0.0)
    with pytest.raises(ValueError):
        SaltPepper(1.5)
    with pytest.raises(ValueError):
        SaltPepper(0.5, low=1.0, high=0.0)
    with pytest.raises(ValueError):
        PoissonNoise(0.0)


def test_phantom_deterministic_unit_range():
    a = phantom((64, 48))
    b = phantom((64, 48))
    assert np.array_equal(a, b)
    assert a.shape == (64, 48)
    assert a.min() >= 0.0
    assert a.max() <= 1.0
    with pytest.raises(ValueError):
        phantom((2, 10))
