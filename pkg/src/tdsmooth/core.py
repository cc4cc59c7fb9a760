"""Core grid validation, smoothing-parameter types, and the loss functional.

A grid is a plain two-dimensional float64 ``numpy.ndarray`` with finite
entries.  The decomposition of a grid Z into a trend G and a fluctuation
C = Z - G minimizes

    M = sum (z_ij - g_ij)^2
        + (row weights) * sum_{j>=2} (g_ij - 2 g_i,j-1 + g_i,j-2)^2
        + (col weights) * sum_{i>=2} (g_ij - 2 g_i-1,j + g_i-2,j)^2

(0-based indices; the penalty sums start at the third sample of each
line).  The four parameter types below select how the two penalty sums
are weighted: one global scalar, one scalar per direction, one weight
per row and per column, or a scalar on one axis and a vector on the
other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .penalty import apply_gram


def as_grid(a, min_size: int = 1, name: str = "grid") -> np.ndarray:
    """Validate and return ``a`` as a 2-D float64 array with finite entries."""
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got ndim={arr.ndim}")
    if arr.shape[0] < min_size or arr.shape[1] < min_size:
        raise ValueError(
            f"{name} must be at least {min_size}x{min_size}, got {arr.shape[0]}x{arr.shape[1]}"
        )
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def _positive_vector(v, length: int, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size != length:
        raise ValueError(f"{name} must be a length-{length} vector, got shape {arr.shape}")
    if not np.isfinite(arr).all() or (arr <= 0).any():
        raise ValueError(f"{name} entries must be finite and strictly positive")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class TDS:
    """Global smoothing: both penalty sums share one scalar weight.

    ``lam == 0`` is the identity case (the trend is the data itself).
    """

    lam: float

    def __post_init__(self):
        if not np.isfinite(self.lam) or self.lam < 0:
            raise ValueError(f"lam must be finite and >= 0, got {self.lam}")


@dataclass(frozen=True)
class TDS1:
    """Directional smoothing: gamma weights the along-row (column-index)
    penalty, delta the along-column (row-index) penalty."""

    gamma: float
    delta: float

    def __post_init__(self):
        for name, v in (("gamma", self.gamma), ("delta", self.delta)):
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be finite and > 0, got {v}")


@dataclass(frozen=True)
class TDS2:
    """Per-line smoothing: one along-row weight per row (gamma, length m)
    and one along-column weight per column (delta, length n)."""

    gamma: np.ndarray
    delta: np.ndarray

    def __post_init__(self):
        for name in ("gamma", "delta"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.ndim != 1 or v.size == 0:
                raise ValueError(f"{name} must be a nonempty 1-D vector")
            if not np.isfinite(v).all() or (v <= 0).any():
                raise ValueError(f"{name} entries must be finite and strictly positive")
            v = v.copy()
            v.flags.writeable = False
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class TDS3:
    """Mixed smoothing: exactly one of gamma/delta is a scalar, the other a
    vector (per-row gamma of length m, or per-column delta of length n)."""

    gamma: float | np.ndarray
    delta: float | np.ndarray

    def __post_init__(self):
        scalars = 0
        for name in ("gamma", "delta"):
            v = getattr(self, name)
            if np.isscalar(v) or np.ndim(v) == 0:
                v = float(v)
                if not np.isfinite(v) or v <= 0:
                    raise ValueError(f"{name} must be finite and > 0, got {v}")
                scalars += 1
                object.__setattr__(self, name, v)
            else:
                v = np.asarray(v, dtype=float)
                if v.ndim != 1 or v.size == 0:
                    raise ValueError(f"{name} must be a scalar or a nonempty 1-D vector")
                if not np.isfinite(v).all() or (v <= 0).any():
                    raise ValueError(f"{name} entries must be finite and strictly positive")
                v = v.copy()
                v.flags.writeable = False
                object.__setattr__(self, name, v)
        if scalars != 1:
            raise ValueError("exactly one of gamma/delta must be a scalar")


SmoothingParams = TDS | TDS1 | TDS2 | TDS3


def penalty_weights(params: SmoothingParams, m: int, n: int):
    """Per-variant multipliers for the two penalty terms.

    Returns ``(row_w, col_w)``: row_w scales the along-row curvature term
    (broadcast over rows, shape (m, 1) when vector-valued) and col_w the
    along-column term (shape (1, n) when vector-valued).  Vector lengths
    are checked against the target shape here, at use time.
    """
    if isinstance(params, TDS):
        return params.lam, params.lam
    if isinstance(params, TDS1):
        return params.gamma, params.delta
    if isinstance(params, TDS2):
        gamma = _positive_vector(params.gamma, m, "gamma")
        delta = _positive_vector(params.delta, n, "delta")
        return gamma[:, None], delta[None, :]
    if isinstance(params, TDS3):
        if np.ndim(params.gamma) == 0:
            gamma = float(params.gamma)
            delta = _positive_vector(params.delta, n, "delta")[None, :]
        else:
            gamma = _positive_vector(params.gamma, m, "gamma")[:, None]
            delta = float(params.delta)
        return gamma, delta
    raise TypeError(f"unsupported parameter type {type(params).__name__}")


def penalty_term(g: np.ndarray, params: SmoothingParams) -> np.ndarray:
    """Weighted curvature term of the normal equations, e.g. lam*(G T + H G).

    Computed matrix-free with the second-difference stencil; this is the
    quantity the optimum equates with the fluctuation C.
    """
    m, n = g.shape
    row_w, col_w = penalty_weights(params, m, n)
    return row_w * apply_gram(g, axis=1) + col_w * apply_gram(g, axis=0)


def second_diff_row(g, i: int, j: int) -> float:
    """Second difference along a row: g[i, j] - 2 g[i, j-1] + g[i, j-2].

    Indices are 0-based; requires j >= 2.
    """
    g = as_grid(g)
    if not (0 <= i < g.shape[0] and 2 <= j < g.shape[1]):
        raise IndexError(f"index ({i}, {j}) out of range for row second difference")
    return float(g[i, j] - 2.0 * g[i, j - 1] + g[i, j - 2])


def second_diff_col(g, i: int, j: int) -> float:
    """Second difference along a column: g[i, j] - 2 g[i-1, j] + g[i-2, j]."""
    g = as_grid(g)
    if not (2 <= i < g.shape[0] and 0 <= j < g.shape[1]):
        raise IndexError(f"index ({i}, {j}) out of range for column second difference")
    return float(g[i, j] - 2.0 * g[i - 1, j] + g[i - 2, j])


def loss(z, g, params: SmoothingParams) -> float:
    """Penalized least-squares objective the solvers minimize.

    ``R + (weighted P) + (weighted Q)`` where R is the squared residual
    sum, P the squared along-row second differences, and Q the squared
    along-column second differences.
    """
    z = as_grid(z, 3, "z")
    g = as_grid(g, 3, "g")
    if z.shape != g.shape:
        raise ValueError(f"shape mismatch: z is {z.shape}, g is {g.shape}")
    m, n = g.shape
    row_w, col_w = penalty_weights(params, m, n)
    r = float(((z - g) ** 2).sum())
    p = (np.diff(g, 2, axis=1) ** 2)
    q = (np.diff(g, 2, axis=0) ** 2)
    return r + float((row_w * p).sum()) + float((col_w * q).sum())


def loss_gradient(z, g, params: SmoothingParams) -> np.ndarray:
    """Exact gradient of :func:`loss` with respect to g.

    Equals ``2 * (g + penalty_term(g) - z)``; it vanishes at the trend the
    solvers return, up to solver tolerance.
    """
    z = as_grid(z, 3, "z")
    g = as_grid(g, 3, "g")
    if z.shape != g.shape:
        raise ValueError(f"shape mismatch: z is {z.shape}, g is {g.shape}")
    return 2.0 * (g + penalty_term(g, params) - z)
