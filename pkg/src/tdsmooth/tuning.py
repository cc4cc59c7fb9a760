"""Global smoothing-parameter selection by scanning the quality metric.

The scan starts at an initial weight, solves the decomposition, computes
the configured quality value alpha, and steps the weight by a fixed
increment until alpha lands within a threshold of the target or the
upper limit is reached.  Two use cases: target the known noise scale via
the fluctuation's standard deviation, or target a reference-based metric
(MSE, PSNR, SSIM) chosen in advance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import metrics
from .core import as_grid
from .errors import NumericalError
from .solver import Decomposition, SpectralCache, solve_tds

REFERENCE_METRICS = ("mse", "psnr", "ssim")
METRICS = REFERENCE_METRICS + ("fluct-std",)


@dataclass(frozen=True)
class TuneConfig:
    """Scan configuration.

    metric selects alpha; target is the desired alpha value; the scan
    stops at the first weight where ``|alpha - target| <= eps``.  peak is
    only consulted by the PSNR/SSIM metrics (defaults to the reference's
    maximum magnitude).
    """

    metric: str
    target: float
    eps: float
    step: float
    max_lambda: float
    initial_lambda: float = 0.0
    peak: float | None = None

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")
        if not np.isfinite(self.target):
            raise ValueError(f"target must be finite, got {self.target}")
        if not self.eps > 0:
            raise ValueError(f"eps must be > 0, got {self.eps}")
        if not self.step > 0:
            raise ValueError(f"step must be > 0, got {self.step}")
        if self.initial_lambda < 0:
            raise ValueError(f"initial weight must be >= 0, got {self.initial_lambda}")
        if not self.max_lambda > self.initial_lambda:
            raise ValueError(
                f"max_lambda ({self.max_lambda}) must exceed the initial weight "
                f"({self.initial_lambda})"
            )


@dataclass(frozen=True)
class TuneResult:
    """Outcome of a scan.

    status is 'converged' (``|alpha - target| <= eps`` at lam) or
    'exhausted' (the limit was reached first; lam/alpha/decomposition
    describe the last weight visited).  trace lists every (lam, alpha)
    visited in scan order.
    """

    lam: float
    alpha: float
    decomposition: Decomposition
    trace: tuple[tuple[float, float], ...]
    status: str

    @property
    def converged(self) -> bool:
        return self.status == "converged"


def fluctuation_std(c) -> tuple[float, float]:
    """Sample mean and sample standard deviation of all entries of c."""
    c = np.asarray(c, dtype=float)
    if c.size < 2:
        raise ValueError("need at least 2 entries for a sample standard deviation")
    return float(c.mean()), float(c.std(ddof=1))


def _alpha(dec: Decomposition, reference, cfg: TuneConfig) -> float:
    if cfg.metric == "fluct-std":
        return fluctuation_std(dec.fluctuation)[1]
    if cfg.metric == "mse":
        return metrics.mse(reference, dec.trend)
    peak = cfg.peak if cfg.peak is not None else float(np.max(np.abs(reference)))
    if cfg.metric == "psnr":
        return metrics.psnr(reference, dec.trend, peak)
    return metrics.ssim(reference, dec.trend, peak)


def tune_lambda(
    z,
    reference,
    cfg: TuneConfig,
    cache: SpectralCache | None = None,
    accelerate: bool = False,
) -> TuneResult:
    """Scan the global smoothing weight until the metric hits its target.

    reference is required for the reference metrics (mse/psnr/ssim) and
    must be omitted for fluct-std.  The scan visits
    ``initial + i * step`` for i = 0, 1, ... and never steps past
    ``max_lambda``; if no visited weight lands within eps of the target
    the result's status is 'exhausted'.

    With ``accelerate=True`` the caller asserts alpha is nondecreasing in
    the weight; the first in-band grid point is then located by bisection
    over the same grid (identical lam/alpha/status, shorter trace).
    """
    z = as_grid(z, 3, "z")
    if cfg.metric == "fluct-std":
        if reference is not None:
            raise ValueError("fluct-std takes no reference grid")
    else:
        if reference is None:
            raise ValueError(f"metric {cfg.metric!r} requires a reference grid")
        reference = as_grid(reference, 1, "reference")
        if reference.shape != z.shape:
            raise ValueError(
                f"reference shape {reference.shape} does not match data {z.shape}"
            )
    if cache is None:
        cache = SpectralCache(*z.shape)

    def probe(i: int) -> tuple[float, float, Decomposition]:
        lam = cfg.initial_lambda + i * cfg.step
        dec = solve_tds(z, lam, cache)
        alpha = _alpha(dec, reference, cfg)
        if math.isnan(alpha):
            raise NumericalError(f"metric value is not a number at weight {lam}")
        return lam, alpha, dec

    # Largest step index that stays within the limit (tiny slack so that
    # an exactly-representable limit like 50 = 0 + 10*5 is included).
    slack = 1e-12 * max(1.0, abs(cfg.max_lambda))
    last = int(math.floor((cfg.max_lambda - cfg.initial_lambda + slack) / cfg.step))

    if accelerate:
        return _bisect(probe, last, cfg)

    trace = []
    i = 0
    while True:
        lam, alpha, dec = probe(i)
        trace.append((lam, alpha))
        if abs(alpha - cfg.target) <= cfg.eps:
            return TuneResult(lam, alpha, dec, tuple(trace), "converged")
        if i >= last:
            return TuneResult(lam, alpha, dec, tuple(trace), "exhausted")
        i += 1


def _bisect(probe, last: int, cfg: TuneConfig) -> TuneResult:
    """Locate the scan's answer assuming alpha is nondecreasing in the weight."""
    seen: dict[int, tuple[float, float, Decomposition]] = {}

    def at(i):
        if i not in seen:
            seen[i] = probe(i)
        return seen[i]

    lo_lam, lo_alpha, lo_dec = at(0)
    if abs(lo_alpha - cfg.target) <= cfg.eps:
        return TuneResult(lo_lam, lo_alpha, lo_dec, ((lo_lam, lo_alpha),), "converged")
    # First grid index whose alpha reaches target - eps; by monotonicity all
    # earlier alphas sit below the band, matching the scan's first hit.
    lo, hi = 0, last
    if at(last)[1] < cfg.target - cfg.eps:
        lam, alpha, dec = at(last)
        trace = tuple(sorted((v[0], v[1]) for v in seen.values()))
        return TuneResult(lam, alpha, dec, trace, "exhausted")
    while lo < hi:
        mid = (lo + hi) // 2
        if at(mid)[1] >= cfg.target - cfg.eps:
            hi = mid
        else:
            lo = mid + 1
    lam, alpha, dec = at(lo)
    status = "converged" if abs(alpha - cfg.target) <= cfg.eps else "exhausted"
    if status == "exhausted":
        # Alpha jumped over the band; the scan would have walked to the end.
        lam, alpha, dec = at(last)
    trace = tuple(sorted((v[0], v[1]) for v in seen.values()))
    return TuneResult(lam, alpha, dec, trace, status)
