"""Comparison filters: median, mean, Gaussian, and adaptive Wiener.

All four use replicate padding at the borders.  Windows may be
rectangular; even-sized windows are centered with the extra coverage
toward the upper left, and even-count medians average the two central
order statistics.
"""

from __future__ import annotations

import numpy as np
import scipy.ndimage
from numpy.lib.stride_tricks import sliding_window_view

from .core import as_grid


def _windows(z, size):
    h, w = size
    if h < 1 or w < 1:
        raise ValueError(f"window must be at least 1x1, got {h}x{w}")
    if h > z.shape[0] or w > z.shape[1]:
        raise ValueError(f"window {h}x{w} larger than grid {z.shape[0]}x{z.shape[1]}")
    padded = np.pad(z, ((h // 2, h - h // 2 - 1), (w // 2, w - w // 2 - 1)), mode="edge")
    return sliding_window_view(padded, (h, w))


def median_filter(z, size: tuple[int, int]) -> np.ndarray:
    """Sliding-window median over the replicate-padded grid.

    Even-count windows average the two central order statistics.
    """
    z = as_grid(z, 1, "z")
    h, w = size
    if h < 1 or w < 1:
        raise ValueError(f"window must be at least 1x1, got {h}x{w}")
    if h > z.shape[0] or w > z.shape[1]:
        raise ValueError(f"window {h}x{w} larger than grid {z.shape[0]}x{z.shape[1]}")
    count = h * w
    lo = scipy.ndimage.rank_filter(z, (count - 1) // 2, size=size, mode="nearest")
    if count % 2:
        return lo
    hi = scipy.ndimage.rank_filter(z, count // 2, size=size, mode="nearest")
    return (lo + hi) / 2.0


def mean_filter(z, size: tuple[int, int]) -> np.ndarray:
    """Sliding-window average over the replicate-padded grid."""
    z = as_grid(z, 1, "z")
    return _windows(z, size).mean(axis=(-2, -1))


def gaussian_filter(z, sigma: float) -> np.ndarray:
    """Separable convolution with a truncated sampled Gaussian.

    The kernel has radius ceil(3 sigma) and is renormalized to sum 1.
    """
    z = as_grid(z, 1, "z")
    if not np.isfinite(sigma) or sigma <= 0:
        raise ValueError(f"sigma must be finite and > 0, got {sigma}")
    r = int(np.ceil(3.0 * sigma))
    t = np.arange(-r, r + 1, dtype=float)
    kernel = np.exp(-(t * t) / (2.0 * sigma * sigma))
    kernel /= kernel.sum()
    out = scipy.ndimage.correlate1d(z, kernel, axis=0, mode="nearest")
    return scipy.ndimage.correlate1d(out, kernel, axis=1, mode="nearest")


def wiener_filter(z, size: tuple[int, int]) -> np.ndarray:
    """Adaptive Wiener filter driven by windowed local statistics.

    Per pixel: local mean mu and local variance s2 over the window; the
    noise power nu is the average of all local variances; the output is
    mu + (max(s2 - nu, 0) / max(s2, nu)) * (z - mu).
    """
    z = as_grid(z, 1, "z")
    w = _windows(z, size)
    mu = w.mean(axis=(-2, -1))
    s2 = (w * w).mean(axis=(-2, -1)) - mu * mu
    np.maximum(s2, 0.0, out=s2)
    nu = s2.mean()
    den = np.maximum(s2, nu)
    gain = np.divide(np.maximum(s2 - nu, 0.0), den, out=np.zeros_like(s2), where=den > 0)
    return mu + gain * (z - mu)
