"""Solvers for the penalized-smoothing normal equations.

Scalar-weighted variants (global and directional) are solved exactly in
the joint eigenbasis of the two penalty matrices: with T = U diag(mu) U'
and H = V diag(rho) V', the transformed trend entries are the data
entries divided by 1 + (row weight) mu_j + (col weight) rho_i.  Vector
weights break that diagonalization, so the per-line variants are solved
by preconditioned conjugate gradients on the symmetric positive definite
operator G -> G + penalty_term(G).  A dense Kronecker factorization
serves as a cross-checking oracle at small sizes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import core
from .core import TDS, TDS1, TDS2, TDS3, SmoothingParams, as_grid
from .errors import NumericalError
from .penalty import MAX_DENSE_ORDER, build_penalty, penalty_diagonal, spectrum

# Largest m*n the dense Kronecker oracle will materialize.
ORACLE_MAX_SIZE = 4096

CG_TOL = 1e-10


class ConvergenceError(NumericalError):
    """Conjugate gradients did not reach the requested tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class SolveDiagnostics:
    """How a decomposition was obtained.

    residual is the Frobenius norm of the defining-equation defect
    ``G + penalty_term(G) - Z``; iterations is 0 for direct solves.
    """

    method: str
    residual: float
    iterations: int
    seconds: float


@dataclass(frozen=True)
class Decomposition:
    """Trend/fluctuation split of a grid: trend + fluctuation == input."""

    trend: np.ndarray
    fluctuation: np.ndarray
    params: SmoothingParams
    diagnostics: SolveDiagnostics

    @property
    def residual(self) -> float:
        return self.diagnostics.residual

    @property
    def iterations(self) -> int:
        return self.diagnostics.iterations


class SpectralCache:
    """Eigendecompositions of the two penalty matrices for one grid shape.

    Computing the spectra costs O(m^3 + n^3); a cache instance amortizes
    that over a parameter sweep, leaving O(mn + m^2 n + m n^2) per solve.
    Instances are immutable and safe to share across concurrent solves.
    """

    def __init__(self, m: int, n: int):
        if m < 3 or n < 3:
            raise ValueError(f"shape must be at least 3x3, got {m}x{n}")
        if max(m, n) > MAX_DENSE_ORDER:
            raise ValueError(
                f"shape {m}x{n} exceeds the spectral cutoff {MAX_DENSE_ORDER}; "
                "use the conjugate-gradient path"
            )
        self.shape = (m, n)
        row = spectrum(build_penalty(n))
        col = spectrum(build_penalty(m))
        # The penalties are positive semidefinite; clip eigensolver roundoff
        # so the transformed denominators are at least 1 exactly.
        self.row_values = np.maximum(row.eigenvalues, 0.0)  # mu, length n
        self.row_vectors = row.eigenvectors                 # U
        self.col_values = np.maximum(col.eigenvalues, 0.0)  # rho, length m
        self.col_vectors = col.eigenvectors                 # V
        for a in (self.row_values, self.row_vectors, self.col_values, self.col_vectors):
            a.flags.writeable = False

    def denominators(self, params: TDS | TDS1) -> np.ndarray:
        """Transformed-system denominators 1 + gamma*mu_j + delta*rho_i."""
        if isinstance(params, TDS):
            gamma = delta = params.lam
        elif isinstance(params, TDS1):
            gamma, delta = params.gamma, params.delta
        else:
            raise TypeError("spectral denominators exist only for scalar-weight variants")
        return 1.0 + gamma * self.row_values[None, :] + delta * self.col_values[:, None]


def _finish(z, g, params, method, iterations, t0) -> Decomposition:
    residual = float(np.linalg.norm(g + core.penalty_term(g, params) - z))
    diag = SolveDiagnostics(
        method=method,
        residual=residual,
        iterations=iterations,
        seconds=time.perf_counter() - t0,
    )
    return Decomposition(trend=g, fluctuation=z - g, params=params, diagnostics=diag)


def _check_cache(cache: SpectralCache | None, m: int, n: int) -> SpectralCache:
    if cache is None:
        return SpectralCache(m, n)
    if cache.shape != (m, n):
        raise ValueError(f"cache built for {cache.shape}, grid is {(m, n)}")
    return cache


def _solve_spectral(z, params, cache) -> Decomposition:
    t0 = time.perf_counter()
    m, n = z.shape
    cache = _check_cache(cache, m, n)
    u = cache.row_vectors
    v = cache.col_vectors
    zt = v.T @ z @ u
    g = v @ (zt / cache.denominators(params)) @ u.T
    return _finish(z, g, params, "spectral", 0, t0)


def solve_tds(z, lam: float, cache: SpectralCache | None = None) -> Decomposition:
    """Global smoothing: solve G + lam*(G T + H G) = Z exactly.

    lam = 0 returns the data unchanged as the trend.  The result's
    fluctuation equals the weighted curvature term of the trend to
    solver accuracy.
    """
    z = as_grid(z, 3, "z")
    params = TDS(float(lam))
    if params.lam == 0.0:
        t0 = time.perf_counter()
        return _finish(z, z.copy(), params, "spectral", 0, t0)
    return _solve_spectral(z, params, cache)


def solve_tds1(z, gamma: float, delta: float, cache: SpectralCache | None = None) -> Decomposition:
    """Directional smoothing: solve G + gamma*G T + delta*H G = Z exactly."""
    z = as_grid(z, 3, "z")
    params = TDS1(float(gamma), float(delta))
    return _solve_spectral(z, params, cache)


def _solve_cg(z, params, tol, max_iter) -> Decomposition:
    t0 = time.perf_counter()
    m, n = z.shape
    row_w, col_w = core.penalty_weights(params, m, n)
    if max_iter is None:
        # SPD with min eigenvalue 1 and max at most 1 + 16*(weight scale),
        # so sqrt(condition) * ln(2/tol) / 2 iterations suffice; the first
        # terms keep small, well-conditioned problems generous too.
        scale = float(np.max(row_w)) + float(np.max(col_w))
        max_iter = int(10 * np.sqrt(m * n)) + 200 + int(12.0 * np.sqrt(1.0 + 16.0 * scale))
    # Jacobi preconditioner from the operator diagonal.
    diag = 1.0 + row_w * penalty_diagonal(n)[None, :] + col_w * penalty_diagonal(m)[:, None]
    diag = np.broadcast_to(diag, z.shape)

    def apply(x):
        return x + core.penalty_term(x, params)

    bnorm = np.linalg.norm(z)
    if bnorm == 0.0:
        return _finish(z, np.zeros_like(z), params, "cg", 0, t0)
    x = np.zeros_like(z)
    total = 0
    best = float(np.inf)
    # Converge on the recursive residual, then verify the true defect and
    # restart if rounding drift left it above tolerance, so the recorded
    # residual honors the configured tolerance on success.
    while True:
        r = z - apply(x)
        best = min(best, float(np.linalg.norm(r)))
        if best <= tol * bnorm:
            return _finish(z, x, params, "cg", total, t0)
        if total >= max_iter:
            raise ConvergenceError(
                f"conjugate gradients did not converge in {max_iter} iterations "
                f"(best relative residual {best / bnorm:.3e}, tolerance {tol:.3e})",
                residual=best,
                iterations=total,
            )
        s = r / diag
        p = s.copy()
        rs = float((r * s).sum())
        rnorm = float(np.linalg.norm(r))
        while rnorm > tol * bnorm and total < max_iter:
            ap = apply(p)
            alpha = rs / float((p * ap).sum())
            x += alpha * p
            r -= alpha * ap
            rnorm = float(np.linalg.norm(r))
            s = r / diag
            rs_new = float((r * s).sum())
            p = s + (rs_new / rs) * p
            rs = rs_new
            total += 1


def solve_tds2(
    z,
    gamma,
    delta,
    tol: float = CG_TOL,
    max_iter: int | None = None,
) -> Decomposition:
    """Per-line smoothing: solve G + diag(gamma) G T + H G diag(delta) = Z.

    gamma has one strictly positive weight per row (length m), delta one
    per column (length n).  The system is solved by Jacobi-preconditioned
    conjugate gradients until the relative residual drops below ``tol``;
    running out of iterations raises :class:`ConvergenceError` carrying
    the best residual reached.
    """
    z = as_grid(z, 3, "z")
    params = TDS2(np.asarray(gamma, dtype=float), np.asarray(delta, dtype=float))
    core.penalty_weights(params, *z.shape)  # length check against this grid
    return _solve_cg(z, params, tol, max_iter)


def solve_tds3(
    z,
    gamma,
    delta,
    tol: float = CG_TOL,
    max_iter: int | None = None,
) -> Decomposition:
    """Mixed smoothing: a scalar weight on one axis, a vector on the other.

    Delegates to the per-line machinery with the scalar broadcast; the
    two admissible forms are G + gamma*G T + H G diag(delta) = Z and
    G + diag(gamma) G T + delta*H G = Z.
    """
    z = as_grid(z, 3, "z")
    params = TDS3(gamma, delta)
    core.penalty_weights(params, *z.shape)
    return _solve_cg(z, params, tol, max_iter)


def solve(
    z,
    params: SmoothingParams,
    cache: SpectralCache | None = None,
    tol: float = CG_TOL,
    max_iter: int | None = None,
) -> Decomposition:
    """Dispatch to the natural solver for the given parameter variant."""
    if isinstance(params, TDS):
        return solve_tds(z, params.lam, cache)
    if isinstance(params, TDS1):
        return solve_tds1(z, params.gamma, params.delta, cache)
    if isinstance(params, TDS2):
        return solve_tds2(z, params.gamma, params.delta, tol, max_iter)
    if isinstance(params, TDS3):
        return solve_tds3(z, params.gamma, params.delta, tol, max_iter)
    raise TypeError(f"unsupported parameter type {type(params).__name__}")


def _kronecker_matrix(m: int, n: int, params: SmoothingParams) -> np.ndarray:
    t = build_penalty(n)
    h = build_penalty(m)
    i_m = np.eye(m)
    i_n = np.eye(n)
    row_w, col_w = core.penalty_weights(params, m, n)
    if isinstance(params, TDS) or isinstance(params, TDS1):
        k = row_w * np.kron(t, i_m) + col_w * np.kron(i_n, h)
    else:
        gamma = np.broadcast_to(row_w, (m, 1))[:, 0]
        delta = np.broadcast_to(col_w, (1, n))[0, :]
        k = np.kron(t, np.diag(gamma)) + np.kron(np.diag(delta), h)
    return np.eye(m * n) + k


def solve_dense_kronecker(z, params: SmoothingParams) -> Decomposition:
    """Ground-truth oracle: materialize and factor the mn x mn system.

    The stacked-column system matrix I + (weights applied to T x I and
    I x H Kronecker terms) is symmetric positive definite with smallest
    eigenvalue at least 1.  Only intended for cross-validation; sizes
    above ``ORACLE_MAX_SIZE`` unknowns are refused.
    """
    z = as_grid(z, 3, "z")
    m, n = z.shape
    if m * n > ORACLE_MAX_SIZE:
        raise ValueError(f"oracle limited to {ORACLE_MAX_SIZE} unknowns, got {m * n}")
    t0 = time.perf_counter()
    k = _kronecker_matrix(m, n, params)
    g = np.linalg.solve(k, z.ravel(order="F")).reshape((m, n), order="F")
    return _finish(z, g, params, "dense-kronecker", 0, t0)


def forward_apply(g, params: SmoothingParams) -> np.ndarray:
    """Forward operator Z = G + penalty_term(G): the exact inverse of solve.

    Applying it to a decomposed trend reconstructs the original grid;
    applied to an image it amplifies second-difference detail
    (sharpening).
    """
    g = as_grid(g, 3, "g")
    return g + core.penalty_term(g, params)


def sylvester_residual(g, z, params: SmoothingParams) -> float:
    """Frobenius defect of the split form G A + B G = Z.

    A = I/2 + gamma*T and B = I/2 + delta*H (gamma = delta = lam for the
    global variant); algebraically identical to the normal-equation
    defect.  Vector-weighted variants admit no such split and are
    rejected.
    """
    g = as_grid(g, 3, "g")
    z = as_grid(z, 3, "z")
    if g.shape != z.shape:
        raise ValueError(f"shape mismatch: g is {g.shape}, z is {z.shape}")
    if isinstance(params, TDS):
        gamma = delta = params.lam
    elif isinstance(params, TDS1):
        gamma, delta = params.gamma, params.delta
    else:
        raise ValueError(
            "the Sylvester split exists only for scalar-weight variants"
        )
    m, n = g.shape
    a = np.eye(n) / 2.0 + gamma * build_penalty(n)
    b = np.eye(m) / 2.0 + delta * build_penalty(m)
    return float(np.linalg.norm(g @ a + b @ g - z))
