"""Seeded synthetic data: the benchmark test surface and four noise models.

Reproducibility contract: every noise draw comes from the Philox 4x64-10
counter-based generator keyed by the 64-bit seed field, mapped to (0, 1)
uniforms, and pushed through inverse-CDF transforms (no ziggurat, no
rejection), so a fixed seed yields a bit-identical noise grid on every
run and the stream is reproducible from the documented recipe alone.
See docs/formats.md for the exact draw order per noise kind.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.special
import scipy.stats

from .core import as_grid

# Smallest uniform handed to an inverse CDF; keeps transforms finite at the
# 2**-53 corner of the generator's output range.
_MIN_UNIFORM = 2.0 ** -53


def test_surface(xs, ys) -> np.ndarray:
    """Benchmark surface sampled on an axis grid.

    Entry (i, j) is ``x_i + y_j + 2 sin(x_i + y_j) + 10``; rows follow the
    x axis, columns the y axis.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    for name, v in (("xs", xs), ("ys", ys)):
        if v.ndim != 1 or v.size == 0:
            raise ValueError(f"{name} must be a nonempty 1-D vector")
        if v.size > 1 and (np.diff(v) <= 0).any():
            raise ValueError(f"{name} must be strictly ascending")
    s = xs[:, None] + ys[None, :]
    return s + 2.0 * np.sin(s) + 10.0


def canonical_axes() -> tuple[np.ndarray, np.ndarray]:
    """Sampling axes of the canonical 31x21 fixture: x in [1, 4], y in [1, 3],
    both with step 0.1."""
    return np.linspace(1.0, 4.0, 31), np.linspace(1.0, 3.0, 21)


def canonical_surface() -> np.ndarray:
    """The canonical 31x21 benchmark fixture."""
    return test_surface(*canonical_axes())


@dataclass(frozen=True)
class Awgn:
    """Additive white Gaussian noise with standard deviation sigma."""

    sigma: float
    seed: int = 0

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma <= 0:
            raise ValueError(f"sigma must be finite and > 0, got {self.sigma}")


@dataclass(frozen=True)
class Mwgn:
    """Multiplicative white Gaussian noise: z + z * W, W ~ N(0, sigma^2)."""

    sigma: float
    seed: int = 0

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma <= 0:
            raise ValueError(f"sigma must be finite and > 0, got {self.sigma}")


@dataclass(frozen=True)
class ComplexNoise:
    """Additive product noise n1 * n2 with n1 standard normal and n2
    gamma-distributed (shape, scale)."""

    shape: float = 2.0
    scale: float = 1.0
    seed: int = 0

    def __post_init__(self):
        for name, v in (("shape", self.shape), ("scale", self.scale)):
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be finite and > 0, got {v}")


@dataclass(frozen=True)
class SaltPepper:
    """Salt-and-pepper noise: a `density` fraction of entries is replaced,
    half with `low` and half with `high`.

    Replacement values default to the grid's min/max at application time
    (image pipelines pass 0 and the peak explicitly).
    """

    density: float
    low: float | None = None
    high: float | None = None
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.density <= 1.0):
            raise ValueError(f"density must be in (0, 1], got {self.density}")
        if self.low is not None and self.high is not None and not self.low < self.high:
            raise ValueError(f"low must be < high, got {self.low} >= {self.high}")


@dataclass(frozen=True)
class PoissonNoise:
    """Shot noise: draws Poisson(z * scale) / scale per entry.

    The default scale treats unit-range intensities as 8-bit photon
    counts.  Requires nonnegative input.
    """

    scale: float = 255.0
    seed: int = 0

    def __post_init__(self):
        if not np.isfinite(self.scale) or self.scale <= 0:
            raise ValueError(f"scale must be finite and > 0, got {self.scale}")


NoiseSpec = Awgn | Mwgn | ComplexNoise | SaltPepper | PoissonNoise


def _uniforms(seed: int, count: int) -> np.ndarray:
    gen = np.random.Generator(np.random.Philox(key=seed))
    return np.maximum(gen.random(count), _MIN_UNIFORM)


def _standard_normal(u: np.ndarray) -> np.ndarray:
    return scipy.special.ndtri(u)


def apply_noise(z, spec: NoiseSpec) -> np.ndarray:
    """Corrupt a grid with the given noise model, deterministically per seed.

    Uniform draws are consumed in row-major entry order; models needing
    two variates per entry consume two consecutive full-grid blocks.
    """
    z = as_grid(z, 1, "z")
    count = z.size
    if isinstance(spec, Awgn):
        w = _standard_normal(_uniforms(spec.seed, count)).reshape(z.shape)
        return z + spec.sigma * w
    if isinstance(spec, Mwgn):
        w = _standard_normal(_uniforms(spec.seed, count)).reshape(z.shape)
        return z + z * (spec.sigma * w)
    if isinstance(spec, ComplexNoise):
        u = _uniforms(spec.seed, 2 * count)
        n1 = _standard_normal(u[:count]).reshape(z.shape)
        n2 = (spec.scale * scipy.special.gammaincinv(spec.shape, u[count:])).reshape(z.shape)
        return z + n1 * n2
    if isinstance(spec, SaltPepper):
        low = float(z.min()) if spec.low is None else spec.low
        high = float(z.max()) if spec.high is None else spec.high
        if not low < high:
            raise ValueError(
                f"replacement values must satisfy low < high, got {low} >= {high}"
            )
        u = _uniforms(spec.seed, 2 * count)
        hit = (u[:count] < spec.density).reshape(z.shape)
        salt = (u[count:] >= 0.5).reshape(z.shape)
        out = z.copy()
        out[hit & ~salt] = low
        out[hit & salt] = high
        return out
    if isinstance(spec, PoissonNoise):
        if (z < 0).any():
            raise ValueError("Poisson noise requires nonnegative input")
        u = _uniforms(spec.seed, count).reshape(z.shape)
        counts = scipy.stats.poisson.ppf(u, z * spec.scale)
        return counts / spec.scale
    raise TypeError(f"unsupported noise spec {type(spec).__name__}")


def phantom(shape: tuple[int, int] = (128, 128)) -> np.ndarray:
    """Deterministic grayscale test image in [0, 1].

    A smooth illumination gradient carrying two disks, a bar, and a
    textured patch, softened by a mild optics-style blur; gives the
    image pipelines edges, flats, and fine detail without shipping
    photographic data.
    """
    from .baselines import gaussian_filter

    m, n = shape
    if m < 3 or n < 3:
        raise ValueError(f"shape must be at least 3x3, got {shape}")
    i = np.arange(m)[:, None] / (m - 1)
    j = np.arange(n)[None, :] / (n - 1)
    img = 0.30 + 0.35 * (0.6 * i + 0.4 * j)
    r2 = (i - 0.32) ** 2 + (j - 0.30) ** 2
    img = np.where(r2 < 0.045, 0.88, img)
    r2 = (i - 0.70) ** 2 + (j - 0.72) ** 2
    img = np.where(r2 < 0.020, 0.12, img)
    bar = (np.abs(i - 0.78) < 0.06) & (np.abs(j - 0.25) < 0.16)
    img = np.where(bar, 0.70, img)
    patch = (np.abs(i - 0.25) < 0.14) & (np.abs(j - 0.75) < 0.14)
    texture = 0.06 * np.sin(28.0 * i * np.pi) * np.sin(22.0 * j * np.pi)
    img = img + np.where(patch, texture, 0.0)
    return np.clip(gaussian_filter(img, 0.7), 0.0, 1.0)
