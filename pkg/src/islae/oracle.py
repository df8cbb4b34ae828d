"""Exhaustive orthant decomposition of the joined solution set, used as ground truth.

Within the orthant ``{x : S x >= 0}`` we have ``|x| = S x`` and the Oettli-Prager
inequality becomes linear, so the joined set is the union of ``2**n`` polyhedra. For
small ``n`` every piece is decided by LP and the certificate's claims are rechecked.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import lp
from ._validation import InputError
from .certificate import one_sided_polyhedron, solution_polyhedron, split_rows
from .oettli_prager import membership

HARD_CAP = 16
DEFAULT_CAP = 12
# Membership comparisons closer than this (relative) to a boundary are rounding-ambiguous
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class OrthantPiece:
    S_tilde: tuple
    feasible: bool
    bounded: bool | None
    polyhedron: lp.Polyhedron
    box: lp.BoundingBox | None = None


def orthant_polyhedron(s, signs):
    signs = np.asarray(signs, dtype=float)
    P = solution_polyhedron(s, np.diag(signs))
    return P.intersect(lp.Polyhedron(-np.diag(signs), np.zeros(s.n)))


def sign_patterns(n):
    """All ±1 patterns of length ``n`` in lexicographic order (-1 before +1)."""
    return [tuple(p) for p in itertools.product((-1, 1), repeat=n)]


def enumerate_orthants(s, cap=DEFAULT_CAP):
    """Decide feasibility and boundedness of all ``2**n`` orthant pieces."""
    if cap > HARD_CAP:
        raise InputError(f"orthant cap {cap} exceeds the hard limit {HARD_CAP}")
    if s.n > cap:
        raise InputError(f"n = {s.n} exceeds the orthant cap {cap} ({2 ** s.n} pieces); raise --cap")
    pieces = []
    for signs in sign_patterns(s.n):
        P = orthant_polyhedron(s, signs)
        box = lp.bounding_box(P)
        if box.status == lp.INFEASIBLE:
            pieces.append(OrthantPiece(signs, False, None, P, None))
        else:
            pieces.append(OrthantPiece(signs, True, box.bounded, P, box))
    return pieces


@dataclass
class CrossCheck:
    pieces: list
    unique_orthant: bool | None = None
    one_sided_feasible: bool | None = None
    margin_consequence: bool | None = None
    membership_agrees: bool | None = None
    delta_one_sided: float | None = None
    worst_margin: float | None = None
    n_samples: int = 0
    n_disagree: int = 0
    n_ambiguous: int = 0
    notes: list = field(default_factory=list)

    @property
    def feasible_signs(self):
        return [p.S_tilde for p in self.pieces if p.feasible]

    def all_passed(self):
        claims = (self.unique_orthant, self.one_sided_feasible, self.margin_consequence,
                  self.membership_agrees)
        return all(c is not False for c in claims)


def sample_points(box, rng, lattice=5, n_random=100, expand=0.1):
    """Lattice plus uniform points over ``box`` enlarged by ``expand`` of its width per side."""
    width = box.hi - box.lo
    pad = expand * np.where(width > 0, width, 1.0 + np.abs(box.lo))
    lo, hi = box.lo - pad, box.hi + pad
    axes = [np.linspace(lo[j], hi[j], lattice) for j in range(lo.shape[0])]
    grid = np.array(list(itertools.product(*axes)))
    uniform = rng.uniform(lo, hi, size=(n_random, lo.shape[0]))
    return np.vstack([grid, uniform])


def membership_agreement(s, P, points):
    """Compare ``x in P`` with Oettli-Prager membership. Returns ``(n_disagree, n_ambiguous)``."""
    disagree = ambiguous = 0
    scale_P = 1.0 + np.abs(P.h)
    for x in points:
        poly_slack = P.h - P.G @ x
        in_P = bool(np.all(poly_slack >= 0))
        verdict = membership(s, x)
        if in_P == verdict.member:
            continue
        op_scale = 1.0 + s.A_r @ np.abs(x) + s.b_r + np.abs(s.A_c @ x) + np.abs(s.b_c)
        near = (np.min(np.abs(poly_slack) / (scale_P * (1.0 + np.abs(P.G) @ np.abs(x))))
                <= BOUNDARY_TOL) or (np.min(np.abs(verdict.slack) / op_scale) <= BOUNDARY_TOL)
        if near:
            ambiguous += 1
        else:
            disagree += 1
    return disagree, ambiguous


def cross_check(s, report, cap=DEFAULT_CAP, seed=0, lattice=5, n_random=100, pieces=None):
    """Recheck a certificate against exhaustive enumeration.

    Claims (b)-(d) are only tested for a passing certificate; otherwise only the
    enumeration is reported.
    """
    if pieces is None:
        pieces = enumerate_orthants(s, cap)
    out = CrossCheck(pieces=pieces)
    if not report.overall:
        out.notes.append(f"certificate failed ({report.first_failure()}); claims skipped")
        return out
    S_signs = tuple(int(v) for v in np.diag(report.S))
    feas = out.feasible_signs
    out.unique_orthant = feas == [S_signs] or (not feas and report.feasible_X is False)

    tilde = report.tilde if report.tilde is not None else split_rows(s.A_c, s.b_c, report.x_hat)
    base = lp.min_margin(one_sided_polyhedron(s, tilde, report.S), report.S)
    if base.status != lp.OPTIMAL:
        out.notes.append(f"one-sided system margin LP: {base.status}")
        out.one_sided_feasible = base.status != lp.INFEASIBLE
        out.margin_consequence = False
        return out
    delta = base.delta
    out.delta_one_sided = delta
    feasible_all, consequence = True, True
    worst = np.inf
    for signs in sign_patterns(s.n):
        res = lp.min_margin(one_sided_polyhedron(s, tilde, np.diag(signs)), report.S)
        if res.status == lp.INFEASIBLE:
            feasible_all = False
            consequence = False
            continue
        if res.status != lp.OPTIMAL:
            consequence = False
            continue
        worst = min(worst, res.delta)
        if res.delta < delta - 1e-9:
            consequence = False
    out.one_sided_feasible = feasible_all
    out.margin_consequence = consequence and delta > 0
    out.worst_margin = float(worst)

    rng = np.random.default_rng(seed)
    X = solution_polyhedron(s, report.S)
    total_dis = total_amb = total = 0
    for piece in pieces:
        if not piece.feasible or not piece.bounded:
            continue
        pts = sample_points(piece.box, rng, lattice, n_random)
        cheb = lp.chebyshev_center(piece.polyhedron)
        if cheb.status == lp.OPTIMAL:
            pts = np.vstack([pts, cheb.center])
        dis, amb = membership_agreement(s, X, pts)
        total_dis += dis
        total_amb += amb
        total += len(pts)
    out.n_samples, out.n_disagree, out.n_ambiguous = total, total_dis, total_amb
    out.membership_agrees = total_dis == 0
    return out
