"""Two-dimensional trend/fluctuation decomposition by penalized least squares.

Decomposes any real matrix (at least 3x3) into a smooth trend and a
fluctuation remainder by minimizing a second-difference-penalized
least-squares loss, with exact spectral solvers for scalar weights,
conjugate gradients for per-row/per-column weights, baseline filters,
quality metrics, seeded noise models, and a benchmark harness.
"""

from .core import (
    TDS,
    TDS1,
    TDS2,
    TDS3,
    as_grid,
    loss,
    loss_gradient,
    second_diff_col,
    second_diff_row,
)
from .errors import NumericalError
from .metrics import MetricReport, evaluate, mse, psnr, ssim
from .penalty import PenaltySpectrum, build_penalty, gershgorin_circles, spectrum
from .solver import (
    ConvergenceError,
    Decomposition,
    SolveDiagnostics,
    SpectralCache,
    forward_apply,
    solve,
    solve_dense_kronecker,
    solve_tds,
    solve_tds1,
    solve_tds2,
    solve_tds3,
    sylvester_residual,
)
from .synth import (
    Awgn,
    ComplexNoise,
    Mwgn,
    PoissonNoise,
    SaltPepper,
    apply_noise,
    canonical_axes,
    canonical_surface,
    phantom,
    test_surface,
)
from .tuning import TuneConfig, TuneResult, fluctuation_std, tune_lambda

__version__ = "0.1.0"

__all__ = [
    "TDS",
    "TDS1",
    "TDS2",
    "TDS3",
    "Awgn",
    "ComplexNoise",
    "ConvergenceError",
    "Decomposition",
    "MetricReport",
    "Mwgn",
    "NumericalError",
    "PenaltySpectrum",
    "PoissonNoise",
    "SaltPepper",
    "SolveDiagnostics",
    "SpectralCache",
    "TuneConfig",
    "TuneResult",
    "apply_noise",
    "as_grid",
    "build_penalty",
    "canonical_axes",
    "canonical_surface",
    "evaluate",
    "fluctuation_std",
    "forward_apply",
    "gershgorin_circles",
    "loss",
    "loss_gradient",
    "mse",
    "phantom",
    "psnr",
    "second_diff_col",
    "second_diff_row",
    "solve",
    "solve_dense_kronecker",
    "solve_tds",
    "solve_tds1",
    "solve_tds2",
    "solve_tds3",
    "spectrum",
    "ssim",
    "sylvester_residual",
    "test_surface",
    "tune_lambda",
]
