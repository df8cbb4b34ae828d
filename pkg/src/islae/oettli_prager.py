"""Oettli-Prager membership test and explicit witness construction.

A point ``x`` belongs to the joined solution set exactly when every row satisfies
``|A_c x - b_c| <= A_r |x| + b_r``; for such a point a concrete ``(A, b)`` inside the
interval bounds with ``A x = b`` can be written down row by row.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import InputError, NotMemberError, as_vector


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    slack: np.ndarray
    worst_row: int


@dataclass(frozen=True)
class WitnessSolution:
    A: np.ndarray
    b: np.ndarray
    x: np.ndarray
    residual_norm: float


def _point(s, x):
    x = as_vector(x, "x")
    if x.shape[0] != s.n:
        raise InputError(f"x has length {x.shape[0]}, system has {s.n} unknowns")
    return x


def membership(s, x):
    """Row slacks ``A_r|x| + b_r - |A_c x - b_c|``; member iff all are >= 0 (no tolerance)."""
    x = _point(s, x)
    slack = s.A_r @ np.abs(x) + s.b_r - np.abs(s.A_c @ x - s.b_c)
    return MembershipVerdict(
        member=bool(np.all(slack >= 0)), slack=slack, worst_row=int(np.argmin(slack))
    )


def sign_pattern(x):
    """``(diag(sign(x)), has_zero)``."""
    x = as_vector(x, "x")
    sg = np.sign(x)
    return np.diag(sg), bool(np.any(sg == 0))


def construct_witness(s, x):
    """Build ``A``, ``b`` within the interval bounds such that ``A x = b``.

    Row ``i`` is shifted against its midpoint residual ``d_i = (A_c x - b_c)_i`` in
    proportion to the radii, scaled by ``d_i / g_i`` with ``g_i = sum_j a^r_ij |x_j| + b^r_i``.
    Raises NotMemberError (with ``.row``) when ``x`` violates the membership inequality.
    """
    x = _point(s, x)
    verdict = membership(s, x)
    if not verdict.member:
        i = verdict.worst_row
        raise NotMemberError(
            f"x is not in the joined solution set: row {i} slack {verdict.slack[i]!r} < 0", row=i
        )
    d = s.A_c @ x - s.b_c
    g = s.A_r @ np.abs(x) + s.b_r
    active = g > 0
    ratio = np.zeros_like(d)
    ratio[active] = d[active] / g[active]
    # |ratio| <= 1 in exact arithmetic; clip the rounding excess so bounds hold exactly
    ratio = np.clip(ratio, -1.0, 1.0)
    dA = -ratio[:, None] * s.A_r * np.sign(x)[None, :]
    db = ratio * s.b_r
    A = s.A_c + dA
    b = s.b_c + db
    return WitnessSolution(A=A, b=b, x=x, residual_norm=float(np.linalg.norm(A @ x - b)))
