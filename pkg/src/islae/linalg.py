"""Dense SVD-based linear algebra: singular values, pseudoinverse, normal least squares.

All rank decisions use a singular-value cutoff relative to the largest singular
value (``RANK_TOL``) with an absolute floor (``ABS_FLOOR``), so the pseudoinverse,
the numeric rank and the reported extremes always agree with one another.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import InputError, as_matrix, as_vector

RANK_TOL = 1e-10
ABS_FLOOR = 1e-12


@dataclass(frozen=True)
class LeastSquaresResult:
    solution: np.ndarray
    residual: np.ndarray
    sigma_min: float
    sigma_max: float
    numeric_rank: int


def _cutoff(s):
    smax = float(s[0]) if s.size else 0.0
    return max(RANK_TOL * smax, ABS_FLOOR)


def singular_values(M):
    """All singular values of ``M`` in descending order, zero-padded to ``M.shape[1]``.

    Values at or below the rank cutoff are reported as exact zeros.
    """
    M = as_matrix(M, "M")
    s = np.linalg.svd(M, compute_uv=False)
    s = np.where(s > _cutoff(s), s, 0.0)
    n = M.shape[1]
    if s.size < n:
        s = np.concatenate([s, np.zeros(n - s.size)])
    return s


def svd_extremes(M):
    """Return ``(sigma_min, sigma_max)``.

    ``sigma_min`` is the n-th largest singular value for an ``m x n`` matrix (zero when
    the matrix has fewer than ``n`` numerically nonzero singular values), and
    ``sigma_max`` is the spectral norm.
    """
    s = singular_values(M)
    return float(s[-1]), float(s[0])


def numeric_rank(M):
    M = as_matrix(M, "M")
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.count_nonzero(s > _cutoff(s)))


def pseudoinverse(M):
    """Moore-Penrose pseudoinverse through the SVD, truncating below the rank cutoff."""
    M = as_matrix(M, "M")
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    keep = s > _cutoff(s)
    inv = np.zeros_like(s)
    inv[keep] = 1.0 / s[keep]
    return (Vt.T * inv) @ U.T


def normal_least_squares(A, b):
    """Minimum-norm least-squares solution ``A^+ b`` with residual and spectrum summary."""
    A = as_matrix(A, "A")
    b = as_vector(b, "b")
    if A.shape[0] != b.shape[0]:
        raise InputError(f"row count of A ({A.shape[0]}) != length of b ({b.shape[0]})")
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    cut = _cutoff(s)
    keep = s > cut
    rank = int(np.count_nonzero(keep))
    x = Vt[keep].T @ ((U[:, keep].T @ b) / s[keep])
    residual = b - A @ x
    sigma_min = float(s[-1]) if (s.size == A.shape[1] and s[-1] > cut) else 0.0
    return LeastSquaresResult(
        solution=x,
        residual=residual,
        sigma_min=sigma_min,
        sigma_max=float(s[0]) if s[0] > cut else 0.0,
        numeric_rank=rank,
    )
