"""Single-orthant certificate for the joined solution set of an overdetermined interval system.

``check_conditions`` evaluates five polynomial-time conditions built from the normal
least-squares solution ``x_hat`` of the midpoint system. When all hold (and ``x_hat`` has
no zero component) the joined solution set equals the polyhedron

    (A_c - A_r S) x <= b_c + b_r,   (-A_c - A_r S) x <= -b_c + b_r,   S = diag(sign(x_hat)),

and, if nonempty, is bounded and lies strictly inside the orthant selected by ``S``.
``certify_and_solve`` then solves it by linear programming.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from . import lp
from ._validation import DomainError, InputError
from .error_bounds import PerturbationInput, ls_perturbation_bound
from .linalg import normal_least_squares, numeric_rank, pseudoinverse, svd_extremes
from .oettli_prager import sign_pattern

CONDITION_NAMES = ("E1", "eq4", "E2", "E3", "E4")

# x_hat one-sided recheck only: rounding slack for a product that is <= 0 in exact arithmetic
_ROUNDING_SLACK = 1e-12


class ShapeError(InputError):
    pass


@dataclass(frozen=True)
class Condition:
    """One condition verdict. ``lhs``/``rhs`` are scalars or lists; margin = worst rhs - lhs."""

    name: str
    passed: bool
    lhs: object = None
    rhs: object = None
    margin: float | None = None
    evaluated: bool = True
    note: str = ""


@dataclass(frozen=True, eq=False)
class TildeSystem:
    A_tilde: np.ndarray
    b_tilde: np.ndarray
    group: tuple

    @property
    def negated(self):
        return np.array([g == "negated" for g in self.group])


@dataclass(frozen=True, eq=False)
class CertificateReport:
    m: int
    n: int
    x_hat: np.ndarray
    residual_c: np.ndarray
    S: np.ndarray
    zero_sign_flag: bool
    sigma_min_Ac: float
    sigma_max_Ar: float
    rank_Ac: int
    rank_tilde: int | None
    ArSx_hat: np.ndarray
    gamma: float | None
    min_abs_xhat: float
    tilde: TildeSystem | None
    x_breve: np.ndarray | None
    delta_b_breve: np.ndarray | None
    Q: np.ndarray | None
    e4_value: float | None
    conditions: dict
    overall: bool
    x_hat_in_one_sided: bool | None
    delta_margin: float | None = None
    feasible_X: bool | None = None
    diagnostics: list = field(default_factory=list)

    @property
    def cond_E1(self):
        return self.conditions["E1"].passed

    @property
    def cond_eq4(self):
        return self.conditions["eq4"].passed

    @property
    def cond_E2(self):
        return self.conditions["E2"].passed

    @property
    def cond_E3(self):
        return self.conditions["E3"].passed

    @property
    def cond_E4(self):
        return self.conditions["E4"].passed

    @property
    def signs(self):
        return np.diag(self.S).astype(int)

    def first_failure(self):
        for name in CONDITION_NAMES:
            if not self.conditions[name].passed:
                return name
        if self.zero_sign_flag:
            return "zero component in x_hat"
        return None


def split_rows(A_c, b_c, x_hat):
    """Negate the rows whose midpoint residual ``A_c x_hat - b_c`` is strictly positive.

    Afterwards every row satisfies ``A_tilde x_hat <= b_tilde``; zero-residual rows are kept.
    """
    A_c = np.asarray(A_c, dtype=float)
    b_c = np.asarray(b_c, dtype=float)
    d = A_c @ np.asarray(x_hat, dtype=float) - b_c
    neg = d > 0
    sign = np.where(neg, -1.0, 1.0)
    return TildeSystem(
        A_tilde=A_c * sign[:, None],
        b_tilde=b_c * sign,
        group=tuple("negated" if v else "kept" for v in neg),
    )


def _sign_matrix(S, n):
    S = np.asarray(S, dtype=float)
    s = np.diag(S) if S.ndim == 2 else S
    if s.shape != (n,):
        raise InputError(f"sign pattern must have {n} entries, got shape {S.shape}")
    if not np.all(np.isin(s, (-1.0, 1.0))):
        raise InputError("sign pattern entries must be +1 or -1")
    return np.diag(s)


def solution_polyhedron(s, S):
    """The 2m-row polyhedron ``(A_c - A_r S) x <= b_c + b_r``, ``(-A_c - A_r S) x <= -b_c + b_r``."""
    S = _sign_matrix(S, s.n)
    ArS = s.A_r @ S
    G = np.vstack([s.A_c - ArS, -s.A_c - ArS])
    h = np.concatenate([s.b_c + s.b_r, -s.b_c + s.b_r])
    return lp.Polyhedron(G, h)


def one_sided_polyhedron(s, tilde, S):
    """``(A_tilde - A_r S) x <= b_tilde + b_r`` for any ±1 pattern ``S``."""
    S = _sign_matrix(S, s.n)
    return lp.Polyhedron(tilde.A_tilde - s.A_r @ S, tilde.b_tilde + s.b_r)


def check_conditions(s):
    """Evaluate all certificate conditions for ``s`` and return a CertificateReport.

    Strict inequalities are compared exactly; the numeric margins are reported so callers
    can impose their own safety factors.
    """
    m, n = s.shape
    if m <= n:
        raise ShapeError(f"certificate needs an overdetermined system (m > n), got m={m}, n={n}")
    diagnostics = []
    ls = normal_least_squares(s.A_c, s.b_c)
    x_hat = ls.solution
    residual_c = s.b_c - s.A_c @ x_hat
    S, zero_flag = sign_pattern(x_hat)
    if zero_flag:
        diagnostics.append("zero component in x_hat: orthant undefined, certificate fails")
    sigma_min_Ac, _ = svd_extremes(s.A_c)
    _, sigma_max_Ar = svd_extremes(s.A_r)
    rank_Ac = ls.numeric_rank
    conds = {}

    e1 = rank_Ac == n and sigma_min_Ac > sigma_max_Ar
    conds["E1"] = Condition(
        "E1", e1, sigma_min_Ac, sigma_max_Ar, sigma_min_Ac - sigma_max_Ar,
        note=f"rank A_c = {rank_Ac}",
    )

    ArSx = s.A_r @ S @ x_hat
    conds["eq4"] = Condition(
        "eq4", bool(np.all(ArSx <= s.b_r)), ArSx.tolist(), s.b_r.tolist(),
        float(np.min(s.b_r - ArSx)),
    )

    min_abs = float(np.min(np.abs(x_hat)))
    gamma = None
    try:
        gamma = ls_perturbation_bound(
            PerturbationInput(
                sigma_min_A=sigma_min_Ac,
                sigma_max_dA=sigma_max_Ar,
                norm_x=float(np.linalg.norm(x_hat)),
                norm_r=float(np.linalg.norm(residual_c)),
                norm_db=float(np.linalg.norm(s.b_r)),
            )
        )
    except DomainError:
        pass
    if gamma is None:
        conds["E2"] = Condition("E2", False, min_abs, None, None, evaluated=False,
                                note="gamma undefined: sigma_min(A_c) <= sigma_max(A_r)")
    else:
        e2 = min_abs > gamma and gamma > 0
        note = ""
        if gamma == 0:
            note = "gamma = 0: degenerate exact system (zero radii), strict gamma > 0 fails"
            diagnostics.append(note)
        conds["E2"] = Condition("E2", e2, min_abs, gamma, min_abs - gamma, note=note)

    tilde = split_rows(s.A_c, s.b_c, x_hat)
    M = tilde.A_tilde - s.A_r @ S
    rhs = tilde.b_tilde + s.b_r
    M_pinv = pseudoinverse(M)
    x_breve = M_pinv @ rhs
    delta_b_breve = rhs - M @ x_breve
    rank_tilde = numeric_rank(M)

    e3 = bool(np.all(delta_b_breve > 0))
    conds["E3"] = Condition("E3", e3, delta_b_breve.tolist(), 0.0, float(np.min(delta_b_breve)))

    Q = None
    e4_value = None
    if not e3:
        conds["E4"] = Condition("E4", False, None, 1.0, None, evaluated=False,
                                note="not evaluated: delta_b_breve is not strictly positive")
    elif np.any(x_breve == 0):
        conds["E4"] = Condition("E4", False, None, 1.0, None, evaluated=False,
                                note="not evaluated: x_breve has a zero component")
    else:
        # q_ij = [M^+]_ij / (x_breve_i * delta_b_breve_j)
        Q = M_pinv / x_breve[:, None] / delta_b_breve[None, :]
        e4_value = float(np.dot(delta_b_breve, delta_b_breve) * Q.max())
        conds["E4"] = Condition("E4", e4_value < 1.0, e4_value, 1.0, 1.0 - e4_value)

    in_one_sided = None
    if np.all(S @ x_hat > 0):
        scale = np.abs(M) @ np.abs(x_hat) + np.abs(rhs)
        in_one_sided = bool(np.all(M @ x_hat <= rhs + _ROUNDING_SLACK * (1.0 + scale)))

    overall = all(c.passed for c in conds.values()) and not zero_flag
    return CertificateReport(
        m=m, n=n, x_hat=x_hat, residual_c=residual_c, S=S, zero_sign_flag=zero_flag,
        sigma_min_Ac=sigma_min_Ac, sigma_max_Ar=sigma_max_Ar, rank_Ac=rank_Ac,
        rank_tilde=rank_tilde, ArSx_hat=ArSx, gamma=gamma, min_abs_xhat=min_abs, tilde=tilde,
        x_breve=x_breve, delta_b_breve=delta_b_breve, Q=Q, e4_value=e4_value,
        conditions=conds, overall=overall, x_hat_in_one_sided=in_one_sided, diagnostics=diagnostics,
    )


@dataclass(frozen=True)
class SolveResult:
    report: CertificateReport
    polyhedron: lp.Polyhedron | None = None
    box: lp.BoundingBox | None = None
    center: np.ndarray | None = None
    radius: float | None = None
    delta: float | None = None


def certify_and_solve(s):
    """Run the certificate and, when it passes, solve the certified polyhedron by LP."""
    report = check_conditions(s)
    if not report.overall:
        return SolveResult(report)
    poly = solution_polyhedron(s, report.S)
    diagnostics = list(report.diagnostics)
    if not lp.feasible(poly):
        diagnostics.append("certified orthant but empty joined set")
        return SolveResult(replace(report, feasible_X=False, diagnostics=diagnostics), poly)
    box = lp.bounding_box(poly)
    if not box.bounded:
        diagnostics.append("bounding-box LP not optimal on a certified system")
    cheb = lp.chebyshev_center(poly)
    margin = lp.min_margin(poly, report.S)
    delta = margin.delta if margin.status == lp.OPTIMAL else None
    report = replace(report, feasible_X=True, delta_margin=delta, diagnostics=diagnostics)
    return SolveResult(
        report, poly, box,
        cheb.center if cheb.status == lp.OPTIMAL else None,
        cheb.radius if cheb.status == lp.OPTIMAL else None,
        delta,
    )


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    return v


def report_to_document(r):
    """Plain-JSON form of a report; ``report_from_document`` inverts it."""
    doc = {
        "m": r.m, "n": r.n, "overall": r.overall, "first_failure": r.first_failure(),
        "x_hat": r.x_hat.tolist(), "residual_c": r.residual_c.tolist(),
        "S": r.signs.tolist(), "zero_sign_flag": r.zero_sign_flag,
        "sigma_min_Ac": r.sigma_min_Ac, "sigma_max_Ar": r.sigma_max_Ar,
        "rank_Ac": r.rank_Ac, "rank_tilde": r.rank_tilde,
        "ArSx_hat": r.ArSx_hat.tolist(), "gamma": r.gamma, "min_abs_xhat": r.min_abs_xhat,
        "tilde": None if r.tilde is None else {
            "A_tilde": r.tilde.A_tilde.tolist(), "b_tilde": r.tilde.b_tilde.tolist(),
            "group": list(r.tilde.group),
        },
        "x_breve": _jsonable(r.x_breve), "delta_b_breve": _jsonable(r.delta_b_breve),
        "Q": _jsonable(r.Q), "e4_value": r.e4_value,
        "conditions": {
            k: {"passed": c.passed, "lhs": _jsonable(c.lhs), "rhs": _jsonable(c.rhs),
                "margin": c.margin, "evaluated": c.evaluated, "note": c.note}
            for k, c in r.conditions.items()
        },
        "x_hat_in_one_sided": r.x_hat_in_one_sided, "delta_margin": r.delta_margin,
        "feasible_X": r.feasible_X, "diagnostics": list(r.diagnostics),
    }
    return doc


def report_from_document(doc):
    def arr(v):
        return None if v is None else np.array(v, dtype=float)

    tilde = None
    if doc.get("tilde") is not None:
        t = doc["tilde"]
        tilde = TildeSystem(arr(t["A_tilde"]), arr(t["b_tilde"]), tuple(t["group"]))
    conds = {
        k: Condition(k, c["passed"], c["lhs"], c["rhs"], c["margin"], c.get("evaluated", True),
                     c.get("note", ""))
        for k, c in doc["conditions"].items()
    }
    return CertificateReport(
        m=doc["m"], n=doc["n"], x_hat=arr(doc["x_hat"]), residual_c=arr(doc["residual_c"]),
        S=np.diag(np.array(doc["S"], dtype=float)), zero_sign_flag=doc["zero_sign_flag"],
        sigma_min_Ac=doc["sigma_min_Ac"], sigma_max_Ar=doc["sigma_max_Ar"],
        rank_Ac=doc["rank_Ac"], rank_tilde=doc["rank_tilde"], ArSx_hat=arr(doc["ArSx_hat"]),
        gamma=doc["gamma"], min_abs_xhat=doc["min_abs_xhat"], tilde=tilde,
        x_breve=arr(doc["x_breve"]), delta_b_breve=arr(doc["delta_b_breve"]), Q=arr(doc["Q"]),
        e4_value=doc["e4_value"], conditions=conds, overall=doc["overall"],
        x_hat_in_one_sided=doc["x_hat_in_one_sided"], delta_margin=doc["delta_margin"],
        feasible_X=doc["feasible_X"], diagnostics=list(doc["diagnostics"]),
    )
