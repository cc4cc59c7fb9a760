"""Second-difference penalty matrices and their spectra.

The order-k penalty matrix is the Gram matrix of the (k-2) x k
second-difference operator (rows ``... 1 -2 1 ...``).  It is symmetric,
positive semidefinite, pentadiagonal, has zero row and column sums,
rank k - 2, and all eigenvalues in [0, 16].  The same family provides
the row-side matrix (order n) and the column-side matrix (order m) of
the smoothing normal equations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericalError

# Dense eigendecomposition is refused above this order; larger problems
# must go through the matrix-free iterative path.
MAX_DENSE_ORDER = 4096

# Relative cutoff below which an eigenvalue counts as zero for rank checks.
RANK_TOL = 1e-9


def build_penalty(k: int) -> np.ndarray:
    """Dense order-k second-difference penalty matrix.

    Parameters
    ----------
    k : int
        Matrix order, at least 3.

    Returns
    -------
    numpy.ndarray
        Symmetric pentadiagonal (k, k) matrix.  For k = 3 and k = 4 the
        explicit small forms are returned; for k > 4 the interior stencil
        is (1, -4, 6, -4, 1) with boundary rows (1, -2, 1, 0, ...) and
        (-2, 5, -4, 1, 0, ...).
    """
    if k < 3:
        raise ValueError(f"penalty order must be at least 3, got {k}")
    if k == 3:
        return np.array([[1.0, -2.0, 1.0], [-2.0, 4.0, -2.0], [1.0, -2.0, 1.0]])
    if k == 4:
        return np.array(
            [
                [1.0, -2.0, 1.0, 0.0],
                [-2.0, 5.0, -4.0, 1.0],
                [1.0, -4.0, 5.0, -2.0],
                [0.0, 1.0, -2.0, 1.0],
            ]
        )
    main = np.full(k, 6.0)
    main[[0, -1]] = 1.0
    main[[1, -2]] = 5.0
    off1 = np.full(k - 1, -4.0)
    off1[[0, -1]] = -2.0
    off2 = np.ones(k - 2)
    return (
        np.diag(main)
        + np.diag(off1, 1)
        + np.diag(off1, -1)
        + np.diag(off2, 2)
        + np.diag(off2, -2)
    )


def penalty_diagonal(k: int) -> np.ndarray:
    """Main diagonal of the order-k penalty matrix without materializing it."""
    if k < 3:
        raise ValueError(f"penalty order must be at least 3, got {k}")
    if k == 3:
        return np.array([1.0, 4.0, 1.0])
    d = np.full(k, 6.0)
    d[[0, -1]] = 1.0
    d[[1, -2]] = 5.0
    return d


def apply_gram(x: np.ndarray, axis: int) -> np.ndarray:
    """Matrix-free multiplication by the penalty matrix along one axis.

    ``apply_gram(g, axis=1)`` equals ``g @ build_penalty(n)`` and
    ``apply_gram(g, axis=0)`` equals ``build_penalty(m) @ g``, computed as
    D.T (D x) with the second-difference stencil; no matrix is formed.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[axis] < 3:
        raise ValueError(f"axis {axis} must have length >= 3, got {x.shape[axis]}")
    d = np.diff(x, 2, axis=axis)
    y = np.zeros_like(x)

    def sl(lo, hi):
        idx = [slice(None)] * x.ndim
        idx[axis] = slice(lo, hi)
        return tuple(idx)

    y[sl(None, -2)] += d
    y[sl(1, -1)] -= 2.0 * d
    y[sl(2, None)] += d
    return y


@dataclass(frozen=True)
class PenaltySpectrum:
    """Orthogonal eigendecomposition of a penalty matrix.

    ``matrix == eigenvectors @ diag(eigenvalues) @ eigenvectors.T`` with
    eigenvalues ascending.  The two smallest eigenvalues are numerically
    zero (constant and linear-ramp null space).
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


def spectrum(n_mat: np.ndarray) -> PenaltySpectrum:
    """Eigendecomposition of a penalty matrix via a dense symmetric solver.

    Refuses orders above ``MAX_DENSE_ORDER``; callers with larger problems
    should use the iterative solver path, which only needs ``apply_gram``.
    """
    n_mat = np.asarray(n_mat, dtype=float)
    if n_mat.ndim != 2 or n_mat.shape[0] != n_mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {n_mat.shape}")
    k = n_mat.shape[0]
    if k > MAX_DENSE_ORDER:
        raise ValueError(
            f"order {k} exceeds the dense eigendecomposition cutoff "
            f"{MAX_DENSE_ORDER}; use the iterative solver path"
        )
    try:
        vals, vecs = scipy.linalg.eigh(n_mat)
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed at order {k}: {exc}") from exc
    return PenaltySpectrum(matrix=n_mat, eigenvalues=vals, eigenvectors=vecs)


def gershgorin_circles(n_mat: np.ndarray) -> list[tuple[float, float]]:
    """Per-row Gershgorin circles (center, radius) of a matrix.

    For the penalty family with k > 4 the distinct circles are (1, 3),
    (5, 7) and (6, 10), which bound every eigenvalue by 16.
    """
    n_mat = np.asarray(n_mat, dtype=float)
    diag = np.diag(n_mat)
    radii = np.abs(n_mat).sum(axis=1) - np.abs(diag)
    return [(float(c), float(r)) for c, r in zip(diag, radii)]
