"""Reproducible random interval systems with a known exact system inside the bounds.

Random numbers come from numpy's PCG64 bit generator seeded with ``GenSpec.seed``
(``numpy.random.default_rng(seed)``). Draw order is fixed: signs and magnitudes of
``x_true`` (when not given), the Gaussian matrix for ``A0``, noise on ``A_c`` then
``b_c``, radii ``A_r`` then ``b_r``. Share fixtures across implementations through the
serialized system files, not through the generator stream.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import InputError, as_vector
from .model import IntervalSystem


@dataclass(frozen=True)
class GenSpec:
    seed: int
    m: int
    n: int
    x_true: tuple | None = None
    noise_scale: float = 2.5e-4
    radius_scale: float = 1e-3
    sigma_floor: float = 1.0
    x_floor: float | None = None

    def resolved_x_floor(self):
        # keeps A_r |x| below the smallest b_r for radii drawn on the same scale
        return 0.25 / self.n if self.x_floor is None else self.x_floor


@dataclass(frozen=True, eq=False)
class GeneratedSystem:
    system: IntervalSystem
    x_true: np.ndarray
    A0: np.ndarray
    b0: np.ndarray
    spec: GenSpec


def _validate(spec):
    if spec.n < 1 or spec.m <= spec.n:
        raise InputError(f"need m > n >= 1, got m={spec.m}, n={spec.n}")
    if spec.noise_scale < 0 or spec.radius_scale < 0:
        raise InputError("noise_scale and radius_scale must be nonnegative")
    if not spec.sigma_floor > 0:
        raise InputError("sigma_floor must be positive")
    if not spec.resolved_x_floor() > 0:
        raise InputError("x_floor must be positive")


def generate(spec):
    """Draw ``A0`` (smallest singular value >= sigma_floor), ``b0 = A0 x_true`` and an
    interval system around noisy midpoints whose bounds contain ``(A0, b0)``'s solution.
    """
    _validate(spec)
    rng = np.random.default_rng(spec.seed)
    m, n = spec.m, spec.n
    x_floor = spec.resolved_x_floor()
    if spec.x_true is None:
        signs = rng.choice([-1.0, 1.0], size=n)
        x_true = signs * rng.uniform(x_floor, 2.0 * x_floor, size=n)
    else:
        x_true = as_vector(spec.x_true, "x_true")
        if x_true.shape[0] != n:
            raise InputError(f"x_true has length {x_true.shape[0]}, expected n={n}")
        if np.min(np.abs(x_true)) < x_floor:
            raise InputError(f"every |x_true_j| must be >= x_floor = {x_floor}")

    U, sv, Vt = np.linalg.svd(rng.normal(size=(m, n)), full_matrices=False)
    A0 = (U * np.maximum(sv, spec.sigma_floor)) @ Vt
    b0 = A0 @ x_true

    A_c = A0 + rng.uniform(-spec.noise_scale, spec.noise_scale, size=(m, n))
    b_c = b0 + rng.uniform(-spec.noise_scale, spec.noise_scale, size=m)
    A_r = rng.uniform(0.5, 1.0, size=(m, n)) * spec.radius_scale
    b_r = rng.uniform(0.5, 1.0, size=m) * spec.radius_scale
    # inflate b_r where needed so that x_true satisfies the Oettli-Prager inequality
    resid = np.abs(A_c @ x_true - b_c)
    spread = A_r @ np.abs(x_true)
    need = resid - spread + 4 * np.finfo(float).eps * (resid + spread)
    b_r = np.maximum(b_r, need)
    return GeneratedSystem(IntervalSystem(A_c, A_r, b_c, b_r), x_true, A0, b0, spec)
