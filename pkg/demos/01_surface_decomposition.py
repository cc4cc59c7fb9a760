"""Decompose a noisy surface into trend + fluctuation.

Samples z(x, y) = x + y + 2 sin(x + y) + 10 on a 31 x 21 grid, adds unit
Gaussian noise, and shows how the global smoothing weight moves energy
from the trend into the fluctuation: tiny weights reproduce the data,
large weights push the full noise (std -> 1) into the fluctuation.
"""

import numpy as np

from tdsmooth import Awgn, SpectralCache, apply_noise, canonical_surface, mse, solve_tds

clean = canonical_surface()
noisy = apply_noise(clean, Awgn(sigma=1.0, seed=1))
print(f"surface: {clean.shape[0]} x {clean.shape[1]}, values in "
      f"[{clean.min():.3f}, {clean.max():.3f}]")
print(f"injected noise: std={np.std(noisy - clean, ddof=1):.4f}\n")

# one eigendecomposition pair serves the whole sweep
cache = SpectralCache(*clean.shape)

print(f"{'lambda':>8} {'std(C)':>8} {'mse(z,G)':>10} {'residual':>10}")
for lam in (0.1, 1.0, 10.0, 100.0, 735.0, 10000.0):
    dec = solve_tds(noisy, lam, cache)
    std = dec.fluctuation.std(ddof=1)
    print(f"{lam:>8g} {std:>8.4f} {mse(clean, dec.trend):>10.4f} "
          f"{dec.residual:>10.2e}")

print("\nThe fluctuation std crosses 1.0 (the injected sigma) in the "
      "hundreds; past that, extra smoothing starts discarding signal "
      "curvature, and mse(z, G) grows again.")
