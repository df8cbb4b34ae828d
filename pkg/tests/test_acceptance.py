"""Acceptance gate. Each test records one PASS/FAIL line, printed in the terminal summary."""

import itertools
import math
import time

import numpy as np
import pytest
from scipy.optimize import linprog

from islae import check_conditions, construct_witness, enumerate_orthants, membership, solve_lp
from islae.certificate import one_sided_polyhedron
from islae.error_bounds import solution_error_bound
from islae.kinetics import REFERENCE_TOL, REFERENCE_VALUES, run_demo
from islae.lp import Polyhedron, min_margin
from islae.oracle import cross_check, sign_patterns
from islae.testgen import GenSpec, generate

from conftest import admissible_points, record_criterion, sweep_specs


def test_criterion_1_kinetics_golden_numbers():
    start = time.perf_counter()
    rep = run_demo()
    elapsed = time.perf_counter() - start
    worst = max(abs(rep.values[k] - v) for k, v in REFERENCE_VALUES.items())
    ok = rep.passed and rep.certificate["overall"] and elapsed < 1.0 and worst <= REFERENCE_TOL
    record_criterion("1 kinetics golden numbers", ok, f"max |diff| {worst:.2e}, {elapsed:.3f} s")
    assert ok


def _pieces(s):
    return [p for p in enumerate_orthants(s) if p.feasible]


def test_criterion_2a_disconnected_bounded_piece_count(disconnected_bounded):
    # stated as exactly two pieces; see the test_oracle grid check for the count found
    count = len(_pieces(disconnected_bounded))
    ok = count == 2
    record_criterion("2a disconnected bounded example: exactly 2 feasible pieces", ok, f"found {count}")
    assert ok


def test_criterion_2b_disconnected_bounded_pieces_bounded(disconnected_bounded):
    pieces = _pieces(disconnected_bounded)
    ok = len(pieces) > 0 and all(p.bounded for p in pieces)
    record_criterion("2b disconnected bounded example: pieces all bounded", ok, f"{len(pieces)} bounded")
    assert ok


def test_criterion_2c_disconnected_unbounded_pieces(disconnected_unbounded):
    pieces = _pieces(disconnected_unbounded)
    ok = len(pieces) == 2 and any(not p.bounded for p in pieces)
    record_criterion("2c disconnected unbounded example: exactly 2 pieces, one unbounded", ok,
                     f"{len(pieces)} pieces, {sum(not p.bounded for p in pieces)} unbounded")
    assert ok


def test_criterion_2d_certificates_fail(disconnected_bounded, disconnected_unbounded):
    ra, rb = check_conditions(disconnected_bounded), check_conditions(disconnected_unbounded)
    ok = (not ra.overall and not rb.overall and ra.first_failure() == "E1"
          and abs(ra.sigma_min_Ac - 1.0) <= 1e-9 and abs(ra.sigma_max_Ar - math.sqrt(2.02)) <= 1e-9)
    record_criterion("2d certificate fails on both (bounded example at E1)", ok,
                     f"sigma {ra.sigma_min_Ac:.12f} vs {ra.sigma_max_Ar:.12f}; unbounded example at {rb.first_failure()}")
    assert ok


@pytest.fixture(scope="module")
def sweep_checks(certified_sweep):
    start = time.perf_counter()
    checks = [cross_check(g.system, sol.report) for g, sol in certified_sweep]
    return checks, time.perf_counter() - start


def test_criterion_3_oracle_equivalence(certified_sweep, sweep_checks):
    checks, elapsed = sweep_checks
    failures = []
    for (g, sol), cc in zip(certified_sweep, checks):
        S = tuple(int(v) for v in np.sign(sol.report.x_hat))
        ok = (cc.feasible_signs == [S] and all(p.bounded for p in cc.pieces if p.feasible)
              and np.all(np.isfinite(sol.box.lo)) and np.all(np.isfinite(sol.box.hi))
              and sol.delta is not None and sol.delta > 0 and cc.membership_agrees)
        if not ok:
            failures.append(g.spec)
    ok = len(certified_sweep) >= 100 and not failures and elapsed < 60
    samples = sum(cc.n_samples for cc in checks)
    record_criterion("3 oracle equivalence on certified sweep", ok,
                     f"{len(certified_sweep)} systems, {samples} samples, "
                     f"{len(failures)} failures, {elapsed:.1f} s")
    assert ok, failures[:5]


def test_criterion_4_one_sided_systems(certified_sweep):
    failures = 0
    checked = 0
    for g, sol in certified_sweep:
        s, r = g.system, sol.report
        # delta is the margin of the one-sided system for the certified pattern S
        base = min_margin(one_sided_polyhedron(s, r.tilde, r.S), r.S)
        if base.status != "optimal" or not base.delta > 0:
            failures += 1
            continue
        delta = base.delta
        for signs in sign_patterns(s.n):
            res = min_margin(one_sided_polyhedron(s, r.tilde, np.diag(signs)), r.S)
            checked += 1
            if res.status != "optimal" or res.delta < delta - 1e-9:
                failures += 1
    ok = failures == 0
    record_criterion("4 all 2^n one-sided systems feasible with margin >= delta", ok,
                     f"{checked} systems, {failures} failures")
    assert ok


def _member_point(s, sol, rng):
    ext = [r.x_opt for r in sol.box.results] + [sol.center]
    ext = np.array(ext)
    for _ in range(100):
        x = rng.dirichlet(np.ones(len(ext))) @ ext
        if membership(s, x).member:
            return x
    raise AssertionError("no exact member point found")


def test_criterion_5_witness_soundness(certified_sweep):
    rng = np.random.default_rng(2024)
    failures = 0
    for k in range(1000):
        g, sol = certified_sweep[k % len(certified_sweep)]
        s = g.system
        x = _member_point(s, sol, rng)
        w = construct_witness(s, x)
        inside = (np.all(w.A >= s.A_c - s.A_r) and np.all(w.A <= s.A_c + s.A_r)
                  and np.all(w.b >= s.b_c - s.b_r) and np.all(w.b <= s.b_c + s.b_r))
        scale = np.linalg.norm(w.A, 2) * np.linalg.norm(x) + np.linalg.norm(w.b)
        if not (inside and np.linalg.norm(w.A @ x - w.b) <= 1e-10 * scale):
            failures += 1
    ok = failures == 0
    record_criterion("5 witness soundness", ok, f"1000 pairs, {failures} failures")
    assert ok


RHOS = [10.0**-k for k in range(1, 9)]
BOUND_SPECS = [(seed, n) for n in (2, 3) for seed in (1, 2, 3)]


def test_criterion_6_error_bound_sweep():
    rng = np.random.default_rng(6)
    problems = []
    points = 0
    for seed, n in BOUND_SPECS:
        bounds = []
        for rho in RHOS:
            g = generate(GenSpec(seed, 3 * n, n, radius_scale=rho, noise_scale=rho / 4, sigma_floor=3.0))
            s = g.system
            b = solution_error_bound(s.A_c, s.A_r, s.b_c, s.b_r).bound
            pts = admissible_points(s, rng)
            points += len(pts)
            err = np.max(np.linalg.norm(pts - g.x_true, axis=1))
            if not err <= b:
                problems.append(f"seed {seed} n {n} rho {rho:g}: error {err:.3e} > bound {b:.3e}")
            bounds.append(b)
        if not all(b2 < b1 for b1, b2 in zip(bounds, bounds[1:])):
            problems.append(f"seed {seed} n {n}: bound not decreasing {bounds}")
        if not bounds[-1] < 1e-6:
            problems.append(f"seed {seed} n {n}: final bound {bounds[-1]:.3e}")
    ok = not problems
    record_criterion("6 error bound sound and decreasing", ok,
                     f"{len(BOUND_SPECS)} systems x {len(RHOS)} radii, {points} points")
    assert ok, problems


# constraint counts keep exhaustive vertex enumeration small: C(k, n) <= 600
MAX_K = {1: 30, 2: 30, 3: 16, 4: 12, 5: 11, 6: 10}


def _vertex_optimum(c, G, h):
    """Minimum of c.x over the vertices of {G x <= h}, or None if no vertex is feasible."""
    k, n = G.shape
    combos = np.array(list(itertools.combinations(range(k), n)))
    M = G[combos]
    rhs = h[combos]
    det = np.linalg.det(M)
    good = np.abs(det) > 1e-9
    V = np.linalg.solve(M[good], rhs[good][..., None])[..., 0]
    feas = np.all(V @ G.T <= h + 1e-9 * (1 + np.abs(h)), axis=1)
    if not feas.any():
        return None
    return float(np.min(V[feas] @ c))


def _random_lp(rng):
    n = int(rng.integers(1, 7))
    k = int(rng.integers(0, MAX_K[n] + 1))
    kind = rng.choice(["feasible", "degenerate", "random", "boxed"])
    G = rng.normal(size=(k, n))
    if kind == "feasible":
        h = G @ rng.normal(size=n) + rng.uniform(0, 1, size=k)
    elif kind == "degenerate":
        h = G @ rng.normal(size=n) + np.where(rng.uniform(size=k) < 0.5, 0.0, rng.uniform(0, 1, size=k))
        if k >= 2:
            G[-1] = G[0]
            h[-1] = h[0]
    else:
        h = rng.normal(size=k)
    if kind == "boxed" or (kind != "random" and rng.uniform() < 0.5):
        G = np.vstack([G, np.eye(n), -np.eye(n)])
        h = np.concatenate([h, np.full(2 * n, 3.0)])
    return rng.normal(size=n), G, h


def _ray_decrease(c, G):
    """Most negative c.d over recession directions G d <= 0 with |d_j| <= 1."""
    n = c.shape[0]
    res = linprog(c, A_ub=G if G.size else None, b_ub=np.zeros(G.shape[0]) if G.size else None,
                  bounds=[(-1, 1)] * n, method="highs")
    return res.fun


def _reference(c, G, h):
    """Status and optimum without trusting any single LP solver's status code.

    Pointed polyhedra are decided by vertex enumeration; otherwise feasibility comes from a
    zero-objective LP. Unboundedness needs an explicit improving recession direction.
    """
    n = c.shape[0]
    pointed = G.shape[0] >= n and np.linalg.matrix_rank(G) == n
    if pointed:
        opt = _vertex_optimum(c, G, h)
        if opt is None:
            return "infeasible", None, True
    else:
        feas = linprog(np.zeros(n), A_ub=G if G.size else None, b_ub=h if G.size else None,
                       bounds=[(None, None)] * n, method="highs")
        if feas.status == 2:
            return "infeasible", None, False
    if _ray_decrease(c, G) < -1e-9:
        return "unbounded", None, pointed
    if pointed:
        return "optimal", opt, True
    ref = linprog(c, A_ub=G, b_ub=h, bounds=[(None, None)] * n, method="highs")
    return "optimal", ref.fun, False


@pytest.mark.slow
def test_criterion_7_lp_core():
    rng = np.random.default_rng(7)
    mismatches = []
    counts = {"optimal": 0, "infeasible": 0, "unbounded": 0}
    by_vertices = 0
    for trial in range(10_000):
        c, G, h = _random_lp(rng)
        n = c.shape[0]
        res = solve_lp(c, Polyhedron(G.reshape(-1, n), h))
        counts[res.status] += 1
        expected, opt, pointed = _reference(c, G.reshape(-1, n), h)
        by_vertices += pointed
        if res.status != expected:
            mismatches.append((trial, "status", res.status, expected))
        elif expected == "optimal" and abs(res.objective - opt) > 1e-7:
            mismatches.append((trial, "objective", res.objective, opt))
    ok = not mismatches
    record_criterion("7 LP core vs vertex enumeration", ok,
                     f"10000 LPs ({by_vertices} decided by vertex enumeration), {counts}, "
                     f"{len(mismatches)} mismatches")
    assert ok, mismatches[:5]


def test_criterion_8_x_hat_in_one_sided_system():
    specs = sweep_specs() + [
        GenSpec(seed, 3 * n, n, radius_scale=rho, noise_scale=rho / 4)
        for rho in (1e-2, 1e-1) for n in (2, 3, 4) for seed in range(1, 51)
    ]
    applicable = failures = 0
    for spec in specs:
        r = check_conditions(generate(spec).system)
        if not r.cond_E1 or r.zero_sign_flag:
            continue
        applicable += 1
        if r.x_hat_in_one_sided is not True:
            failures += 1
    ok = failures == 0 and applicable > 0
    record_criterion("8 x_hat feasible in its one-sided system across the sweep", ok,
                     f"{applicable} of {len(specs)} systems applicable, {failures} failures")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
