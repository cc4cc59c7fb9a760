"""Quality assessment metrics: MSE, PSNR, and windowed SSIM.

PSNR needs an explicit peak value; pass 1.0 for unit-range images and
the reference's maximum magnitude for unbounded surfaces.  A zero MSE
maps to an infinite PSNR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


@dataclass(frozen=True)
class MetricReport:
    """Metric bundle for one (reference, candidate) pair."""

    mse: float
    psnr: float
    ssim: float
    peak: float


def _pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def mse(a, b) -> float:
    """Mean squared entrywise difference."""
    a, b = _pair(a, b)
    return float(((a - b) ** 2).mean())


def psnr(a, b, peak: float) -> float:
    """Peak signal-to-noise ratio in dB: 10 log10(peak^2 / mse).

    Returns ``math.inf`` when the inputs are identical.
    """
    if not np.isfinite(peak) or peak <= 0:
        raise ValueError(f"peak must be finite and > 0, got {peak}")
    m = mse(a, b)
    if m == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / m)


def ssim(a, b, peak: float, window: int = 8) -> float:
    """Mean structural similarity over all uniform window positions.

    Local statistics use an unweighted ``window x window`` box at every
    valid position with stabilizers C1 = (0.01 peak)^2 and
    C2 = (0.03 peak)^2.  Symmetric in its two arguments; equals 1 only
    for identical inputs.
    """
    if not np.isfinite(peak) or peak <= 0:
        raise ValueError(f"peak must be finite and > 0, got {peak}")
    a, b = _pair(a, b)
    if a.ndim != 2:
        raise ValueError(f"expected 2-D inputs, got ndim={a.ndim}")
    if min(a.shape) < window:
        raise ValueError(
            f"grid {a.shape} smaller than the {window}x{window} SSIM window; "
            "pass a smaller window"
        )
    aw = sliding_window_view(a, (window, window))
    bw = sliding_window_view(b, (window, window))
    mu_a = aw.mean(axis=(-2, -1))
    mu_b = bw.mean(axis=(-2, -1))
    var_a = (aw * aw).mean(axis=(-2, -1)) - mu_a * mu_a
    var_b = (bw * bw).mean(axis=(-2, -1)) - mu_b * mu_b
    cov = (aw * bw).mean(axis=(-2, -1)) - mu_a * mu_b
    c1 = (0.01 * peak) ** 2
    c2 = (0.03 * peak) ** 2
    num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)
    den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    return float((num / den).mean())


def evaluate(reference, candidate, peak: float, window: int = 8) -> MetricReport:
    """All three metrics of ``candidate`` against ``reference``."""
    return MetricReport(
        mse=mse(reference, candidate),
        psnr=psnr(reference, candidate, peak),
        ssim=ssim(reference, candidate, peak, window),
        peak=peak,
    )
