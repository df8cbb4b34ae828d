"""Dense two-phase tableau simplex over inequality-form polyhedra, plus geometric queries.

Problems are stated on ``{x : G x <= h}`` with ``x`` free. The solver rewrites them in
standard form by splitting ``x = u - v`` (``u, v >= 0``) and adding one slack per row;
rows with negative right-hand side receive a phase-one artificial. Pivoting follows
Bland's smallest-index rule, so the method terminates on degenerate problems too.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import DomainError, InputError, NumericalError, as_vector

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-8
DEDUP_TOL = 1e-9

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class Polyhedron:
    """``{x : G x <= h}``. ``G`` may have zero rows (the whole space)."""

    G: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        G = np.array(self.G, dtype=float)
        h = np.array(self.h, dtype=float).reshape(-1)
        if G.ndim != 2:
            raise InputError(f"G must be 2-D, got {G.ndim} dimension(s)")
        if G.shape[1] == 0:
            raise InputError("polyhedron needs at least one variable")
        if G.shape[0] != h.shape[0]:
            raise InputError(f"G has {G.shape[0]} rows but h has {h.shape[0]} entries")
        if not (np.all(np.isfinite(G)) and np.all(np.isfinite(h))):
            raise InputError("polyhedron data contains non-finite entries")
        G.setflags(write=False)
        h.setflags(write=False)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "h", h)

    @classmethod
    def empty_constraints(cls, n):
        return cls(np.zeros((0, n)), np.zeros(0))

    @property
    def n(self):
        return self.G.shape[1]

    @property
    def k(self):
        return self.G.shape[0]

    def tolerance(self):
        return FEAS_TOL * (1.0 + np.abs(self.h))

    def contains(self, x, tol=None):
        """Exact test by default; pass ``tol`` (scalar or per-row) for a relaxed one."""
        lhs = self.G @ np.asarray(x, dtype=float)
        return bool(np.all(lhs <= self.h + (0.0 if tol is None else tol)))

    def intersect(self, other):
        return Polyhedron(np.vstack([self.G, other.G]), np.concatenate([self.h, other.h]))


@dataclass(frozen=True)
class LPResult:
    status: str
    x_opt: np.ndarray | None = None
    objective: float | None = None
    iterations: int = 0

    @property
    def optimal(self):
        return self.status == OPTIMAL


def _pivot(T, r, j):
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])


def _simplex(T, basis, ncols, max_iter):
    """Bland-rule primal simplex on tableau ``T`` (last row = reduced costs, last col = rhs).

    Only the first ``ncols`` columns may enter. Returns ``(status, iterations)``.
    """
    k = T.shape[0] - 1
    for it in range(max_iter):
        red = T[k, :ncols]
        candidates = np.flatnonzero(red < -PIVOT_TOL)
        if candidates.size == 0:
            return OPTIMAL, it
        j = int(candidates[0])
        colj = T[:k, j]
        rows = np.flatnonzero(colj > PIVOT_TOL)
        if rows.size == 0:
            return UNBOUNDED, it
        rhs = np.maximum(T[rows, -1], 0.0)
        ratios = rhs / colj[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
        r = int(ties[np.argmin(basis[ties])])
        _pivot(T, r, j)
        basis[r] = j
    raise NumericalError(f"simplex did not terminate within {max_iter} pivots")


def _standard_form(P):
    """Return ``(A_eq, b_eq)`` for ``[G, -G, I] z = h`` with rows flipped so that ``b_eq >= 0``."""
    G, h = P.G, P.h
    k, n = G.shape
    A = np.hstack([G, -G, np.eye(k)])
    b = h.copy()
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0
    return A, b, neg


def _phase_one(P):
    """Run phase one. Returns ``(T, basis, status)`` with artificials removed when feasible."""
    k, n = P.G.shape
    A, b, neg = _standard_form(P)
    nart = int(np.count_nonzero(neg))
    N = 2 * n + k
    T = np.zeros((k + 1, N + nart + 1))
    T[:k, :N] = A
    T[:k, -1] = b
    basis = np.arange(2 * n, 2 * n + k)
    art_rows = np.flatnonzero(neg)
    for a, i in enumerate(art_rows):
        T[i, N + a] = 1.0
        basis[i] = N + a
    if nart:
        # reduced costs of "minimize sum of artificials"
        T[k, :N] = -T[art_rows, :N].sum(axis=0)
        T[k, -1] = -T[art_rows, -1].sum()
        status, it = _simplex(T, basis, N + nart, max_iter=50 * (N + nart + k) + 1000)
        if status != OPTIMAL:
            raise NumericalError("phase one reported an unbounded auxiliary problem")
        infeas = -T[k, -1]
        if infeas > FEAS_TOL * (1.0 + float(np.max(np.abs(P.h), initial=0.0))):
            return None, None, INFEASIBLE
        # drive zero-level artificials out of the basis; drop redundant rows
        keep = np.ones(k, dtype=bool)
        for i in range(k):
            if basis[i] >= N:
                nz = np.flatnonzero(np.abs(T[i, :N]) > PIVOT_TOL)
                if nz.size:
                    _pivot(T, i, int(nz[0]))
                    basis[i] = int(nz[0])
                else:
                    keep[i] = False
        rows = np.concatenate([np.flatnonzero(keep), [k]])
        T = np.delete(T[rows], np.s_[N : N + nart], axis=1)
        basis = basis[keep]
    return T, basis, OPTIMAL


def feasible(P):
    """Phase-one feasibility of ``{x : G x <= h}``."""
    if P.k == 0:
        return True
    return _phase_one(P)[2] == OPTIMAL


def _start(P):
    """Phase-one tableau for ``P`` or None when infeasible."""
    if P.k == 0:
        return np.zeros((1, 2 * P.n + 1)), np.zeros(0, dtype=int)
    T, basis, status = _phase_one(P)
    if status == INFEASIBLE:
        return None
    return T, basis


def _phase_two(start, c, P, sense):
    T, basis = start[0].copy(), start[1].copy()
    cmin = -c if sense == "max" else c
    n, k = P.n, P.k
    N = 2 * n + k
    cost = np.concatenate([cmin, -cmin, np.zeros(k)])
    rows = T.shape[0] - 1
    T[rows, :] = 0.0
    T[rows, :N] = cost
    if rows:
        cb = cost[basis]
        T[rows, :N] -= cb @ T[:rows, :N]
        T[rows, -1] = -(cb @ T[:rows, -1])
    status, it = _simplex(T, basis, N, max_iter=50 * (N + k) + 1000)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, iterations=it)
    z = np.zeros(N)
    z[basis] = np.maximum(T[:rows, -1], 0.0)
    x = z[:n] - z[n : 2 * n] + 0.0
    if k and not P.contains(x, P.tolerance()):
        worst = float(np.max(P.G @ x - P.h))
        raise NumericalError(f"simplex optimum violates a constraint by {worst:.3e}")
    return LPResult(OPTIMAL, x_opt=x, objective=float(c @ x), iterations=it)


def solve_lp(c, P, sense="min"):
    """Optimize ``c . x`` over ``P``; ``sense`` is ``"min"`` or ``"max"``."""
    if sense not in ("min", "max"):
        raise InputError(f"sense must be 'min' or 'max', got {sense!r}")
    c = as_vector(c, "c")
    if c.shape[0] != P.n:
        raise InputError(f"cost vector length {c.shape[0]} != polyhedron dimension {P.n}")
    start = _start(P)
    if start is None:
        return LPResult(INFEASIBLE)
    return _phase_two(start, c, P, sense)


@dataclass(frozen=True)
class ChebyshevResult:
    status: str
    center: np.ndarray | None = None
    radius: float | None = None


def chebyshev_center(P):
    """Center and radius of the largest Euclidean ball inside ``P``.

    The radius variable is free, so the LP is solvable even for empty ``P``; a negative
    optimal radius is then reported with status ``"infeasible"``.
    """
    norms = np.linalg.norm(P.G, axis=1)
    Q = Polyhedron(np.hstack([P.G, norms[:, None]]), P.h)
    c = np.zeros(P.n + 1)
    c[-1] = 1.0
    res = solve_lp(c, Q, sense="max")
    if res.status != OPTIMAL:
        return ChebyshevResult(res.status)
    center, radius = res.x_opt[:-1], float(res.x_opt[-1])
    if radius < -FEAS_TOL * (1.0 + float(np.max(np.abs(P.h), initial=0.0))):
        return ChebyshevResult(INFEASIBLE, center, radius)
    return ChebyshevResult(OPTIMAL, center, max(radius, 0.0))


@dataclass(frozen=True)
class BoundingBox:
    status: str
    lo: np.ndarray
    hi: np.ndarray
    results: list = field(default_factory=list)

    @property
    def bounded(self):
        return self.status == OPTIMAL

    def contains(self, x, tol=0.0):
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lo - tol) and np.all(x <= self.hi + tol))


def bounding_box(P):
    """Per-coordinate min and max over ``P`` (2n LPs).

    ``results`` lists the LPResults as ``[min x_0, max x_0, min x_1, ...]``. Status is
    ``"optimal"`` only when all 2n LPs are optimal, i.e. when ``P`` is bounded.
    """
    n = P.n
    lo = np.full(n, -np.inf)
    hi = np.full(n, np.inf)
    start = _start(P)
    if start is None:
        return BoundingBox(INFEASIBLE, np.full(n, np.nan), np.full(n, np.nan), [])
    results = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        rmin = _phase_two(start, e, P, "min")
        rmax = _phase_two(start, e, P, "max")
        results += [rmin, rmax]
        if rmin.optimal:
            lo[j] = rmin.objective
        if rmax.optimal:
            hi[j] = rmax.objective
    status = OPTIMAL if all(r.optimal for r in results) else UNBOUNDED
    return BoundingBox(status, lo, hi, results)


def vertices_2d(P):
    """Vertices of a bounded planar polyhedron, ordered counter-clockwise.

    Returns an empty list for an empty polyhedron; raises DomainError if unbounded.
    """
    if P.n != 2:
        raise InputError(f"vertices_2d needs a 2-D polyhedron, got dimension {P.n}")
    box = bounding_box(P)
    if box.status == INFEASIBLE:
        return []
    if not box.bounded:
        raise DomainError("polyhedron is unbounded; vertex list undefined")
    G, h = P.G, P.h
    tol = P.tolerance()
    pts = []
    for a, b in itertools.combinations(range(P.k), 2):
        M = G[[a, b]]
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        scale = np.linalg.norm(M[0]) * np.linalg.norm(M[1])
        if scale == 0 or abs(det) <= 1e-12 * scale:
            continue
        v = np.linalg.solve(M, h[[a, b]])
        if np.all(G @ v <= h + tol):
            pts.append(v)
    uniq = []
    for p in pts:
        if not any(np.max(np.abs(p - q)) <= DEDUP_TOL * (1.0 + np.max(np.abs(q))) for q in uniq):
            uniq.append(p)
    if len(uniq) <= 1:
        return uniq
    centroid = np.mean(uniq, axis=0)
    uniq.sort(key=lambda p: math.atan2(p[1] - centroid[1], p[0] - centroid[0]))
    return uniq


@dataclass(frozen=True)
class MarginResult:
    status: str
    delta: float | None = None
    per_axis: np.ndarray | None = None


def min_margin(P, S):
    """``min_j min_{x in P} s_j x_j`` for sign pattern ``S`` (diagonal matrix or vector)."""
    s = np.asarray(S, dtype=float)
    s = np.diag(s) if s.ndim == 2 else s
    if s.shape[0] != P.n:
        raise InputError(f"sign pattern length {s.shape[0]} != dimension {P.n}")
    start = _start(P)
    if start is None:
        return MarginResult(INFEASIBLE)
    per_axis = np.empty(P.n)
    for j in range(P.n):
        e = np.zeros(P.n)
        e[j] = s[j]
        res = _phase_two(start, e, P, "min")
        if not res.optimal:
            return MarginResult(res.status)
        per_axis[j] = res.objective
    return MarginResult(OPTIMAL, float(per_axis.min()), per_axis)
