"""Perturbation bounds for least-squares solutions and for arbitrary interval-system solutions."""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import DomainError, InputError, as_matrix, as_vector
from .linalg import numeric_rank, svd_extremes


@dataclass(frozen=True)
class PerturbationInput:
    sigma_min_A: float
    sigma_max_dA: float
    norm_x: float
    norm_r: float
    norm_db: float


@dataclass(frozen=True)
class ErrorBoundReport:
    alpha: float
    bound: float
    sigma_min_A: float
    sigma_max_dA: float
    norm_b: float
    norm_db: float


def ls_perturbation_bound(p):
    """Upper bound on the change of a full-rank normal pseudo-solution under ``(dA, db)``.

    ``(sigma_max_dA * (|x| + |r| / sigma_min_A) + |db|) / (sigma_min_A - sigma_max_dA)``
    """
    if not p.sigma_min_A > p.sigma_max_dA:
        raise DomainError(
            f"sigma_min(A) = {p.sigma_min_A!r} must exceed sigma_max(dA) = {p.sigma_max_dA!r}; "
            "rank could drop under perturbation"
        )
    gap = p.sigma_min_A - p.sigma_max_dA
    return (p.sigma_max_dA * (p.norm_x + p.norm_r / p.sigma_min_A) + p.norm_db) / gap


def alpha_bound(sigma_min_tildeA, sigma_max_dA):
    """Upper bound on the pseudoinverse norm of any matrix within ``dA`` of ``tilde A``."""
    if not sigma_min_tildeA > sigma_max_dA:
        raise DomainError(
            f"sigma_min(tilde A) = {sigma_min_tildeA!r} must exceed sigma_max(dA) = {sigma_max_dA!r}"
        )
    s, d = sigma_min_tildeA, sigma_max_dA
    return 1.0 / s + math.sqrt(2.0) * d / ((s - d) * s)


class RankDeficientError(DomainError):
    pass


class DenominatorError(DomainError):
    pass


def solution_error_bound(tilde_A, dA, tilde_b, db):
    """Bound on ``|x - x0|`` valid for every solution ``{A, b, x}`` of the interval system
    ``tilde_A +- dA``, ``tilde_b +- db``, whenever the exact consistent system ``A0 x0 = b0``
    lies inside the same bounds.
    """
    tilde_A = as_matrix(tilde_A, "tilde_A")
    dA = as_matrix(dA, "dA")
    tilde_b = as_vector(tilde_b, "tilde_b")
    db = as_vector(db, "db")
    if dA.shape != tilde_A.shape or tilde_b.shape[0] != tilde_A.shape[0] or db.shape != tilde_b.shape:
        raise InputError("inconsistent dimensions among tilde_A, dA, tilde_b, db")
    if np.any(dA < 0) or np.any(db < 0):
        raise InputError("radii dA and db must be nonnegative")
    n = tilde_A.shape[1]
    if numeric_rank(tilde_A) != n:
        raise RankDeficientError(f"tilde_A must have full column rank {n}")
    s_min, _ = svd_extremes(tilde_A)
    _, d_max = svd_extremes(dA)
    if not s_min > d_max:
        raise DomainError(f"sigma_min(tilde_A) = {s_min!r} must exceed sigma_max(dA) = {d_max!r}")
    alpha = alpha_bound(s_min, d_max)
    denom = 1.0 - 2.0 * alpha * d_max
    if not denom > 0:
        raise DenominatorError(f"1 - 2*alpha*sigma_max(dA) = {denom!r} is not positive")
    nb, ndb = float(np.linalg.norm(tilde_b)), float(np.linalg.norm(db))
    bound = 2.0 * alpha / denom * (alpha * d_max * (nb + ndb) + ndb)
    return ErrorBoundReport(
        alpha=alpha, bound=bound, sigma_min_A=s_min, sigma_max_dA=d_max, norm_b=nb, norm_db=ndb
    )


def a_priori_bound(A0, x0, dA, db):
    """The tighter middle bound ``|A0^+| (2|dA| |x0| + 2|db|) / (1 - 2|dA| |A0^+|)``.

    Needs the unknown exact system, so it is only useful on synthetic data.
    """
    s0, _ = svd_extremes(A0)
    _, d_max = svd_extremes(dA)
    pinv_norm = 1.0 / s0
    denom = 1.0 - 2.0 * d_max * pinv_norm
    if not denom > 0:
        raise DenominatorError(f"1 - 2*|dA|*|A0^+| = {denom!r} is not positive")
    return pinv_norm / denom * (2.0 * d_max * float(np.linalg.norm(x0)) + 2.0 * float(np.linalg.norm(db)))
