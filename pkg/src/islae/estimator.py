"""scikit-learn style regressor for linear models fitted to interval-valued data."""

import warnings

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .certificate import certify_and_solve
from .model import IntervalSystem


class CertificateWarning(UserWarning):
    pass


def _radius(value, shape, name):
    if value is None:
        return np.zeros(shape)
    r = np.broadcast_to(np.asarray(value, dtype=float), shape).copy()
    if not np.all(np.isfinite(r)) or np.any(r < 0):
        raise ValueError(f"{name} must be finite and nonnegative")
    return r


class IntervalLinearRegression(RegressorMixin, BaseEstimator):
    """Linear regression on interval data through the joined solution set.

    Each sample contributes the interval equation ``[X_i +- X_radius_i] . w + b = [y_i +- y_radius_i]``.
    When the single-orthant certificate holds, the set of admissible coefficient vectors
    is a bounded polyhedron with a fixed sign pattern; ``coef_`` is its Chebyshev center
    (or the midpoint least-squares solution with ``solution="lsq"``) and ``coef_box_``
    its exact coordinate ranges.

    Parameters
    ----------
    fit_intercept : bool, default=True
        Add an exact column of ones (zero radius).
    solution : {"chebyshev", "lsq"}, default="chebyshev"
        Representative point reported in ``coef_``/``intercept_``.
    require_certificate : bool, default=False
        Raise instead of warning when the certificate fails or the set is empty.
    """

    def __init__(self, fit_intercept=True, solution="chebyshev", require_certificate=False):
        self.fit_intercept = fit_intercept
        self.solution = solution
        self.require_certificate = require_certificate

    def _design(self, X, X_radius):
        if self.fit_intercept:
            ones = np.ones((X.shape[0], 1))
            return np.hstack([ones, X]), np.hstack([np.zeros_like(ones), X_radius])
        return X, X_radius

    def fit(self, X, y, X_radius=None, y_radius=None):
        if self.solution not in ("chebyshev", "lsq"):
            raise ValueError(f"solution must be 'chebyshev' or 'lsq', got {self.solution!r}")
        X, y = check_X_y(X, y, dtype=float, y_numeric=True)
        X_radius = _radius(X_radius, X.shape, "X_radius")
        y_radius = _radius(y_radius, y.shape, "y_radius")
        A_c, A_r = self._design(X, X_radius)
        self.system_ = IntervalSystem(A_c, A_r, y, y_radius)
        sol = certify_and_solve(self.system_)
        report = sol.report
        self.certificate_ = report
        self.certified_ = bool(report.overall and report.feasible_X)
        self.n_features_in_ = X.shape[1]

        if self.certified_:
            self.coef_box_ = (sol.box.lo, sol.box.hi)
            self.chebyshev_radius_ = sol.radius
            w = sol.center if self.solution == "chebyshev" else report.x_hat
        else:
            if report.overall:
                msg = "certificate holds but the joined solution set is empty"
            else:
                msg = f"single-orthant certificate failed at {report.first_failure()}"
            if self.require_certificate:
                raise ValueError(msg)
            warnings.warn(msg + "; falling back to midpoint least squares", CertificateWarning)
            self.coef_box_ = None
            self.chebyshev_radius_ = None
            w = report.x_hat
        self.solution_ = np.asarray(w, dtype=float)
        if self.fit_intercept:
            self.intercept_ = float(w[0])
            self.coef_ = self.solution_[1:].copy()
        else:
            self.intercept_ = 0.0
            self.coef_ = self.solution_.copy()
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X, dtype=float)
        return X @ self.coef_ + self.intercept_

    def predict_interval(self, X, X_radius=None):
        """Enclosure ``(lo, hi)`` of predictions over the coefficient box and input intervals."""
        check_is_fitted(self, "coef_")
        if self.coef_box_ is None:
            raise ValueError("no certified coefficient box; fit did not certify the system")
        X = check_array(X, dtype=float)
        A_c, A_r = self._design(X, _radius(X_radius, X.shape, "X_radius"))
        lo_w, hi_w = self.coef_box_
        # interval product [a_c +- a_r] * [lo_w, hi_w], summed over columns
        a_lo, a_hi = A_c - A_r, A_c + A_r
        cands = np.stack([a_lo * lo_w, a_lo * hi_w, a_hi * lo_w, a_hi * hi_w])
        return cands.min(axis=0).sum(axis=1), cands.max(axis=0).sum(axis=1)
