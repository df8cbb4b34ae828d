from importlib import resources

import numpy as np
import pytest

from islae.certificate import certify_and_solve
from islae.kinetics import default_dataset, linearize
from islae.model import IntervalSystem, load_system
from islae.testgen import GenSpec, generate

DATA = resources.files("islae").joinpath("data")


def data_path(name):
    return str(DATA.joinpath(name))


@pytest.fixture(scope="session")
def kinetics_system():
    return linearize(default_dataset())


@pytest.fixture(scope="session")
def disconnected_bounded():
    return load_system(data_path("disconnected_bounded.json"))


@pytest.fixture(scope="session")
def disconnected_unbounded():
    return load_system(data_path("disconnected_unbounded.json"))


def sweep_specs(seeds=range(1, 101), ns=(2, 3, 4)):
    """The standard randomized sweep: m = 3n, default radii."""
    return [GenSpec(seed, 3 * n, n) for n in ns for seed in seeds]


@pytest.fixture(scope="session")
def certified_sweep():
    """(generated, SolveResult) for every sweep system whose certificate passes."""
    out = []
    for spec in sweep_specs():
        g = generate(spec)
        sol = certify_and_solve(g.system)
        if sol.report.overall:
            out.append((g, sol))
    return out


def random_system(rng, m, n, radius=0.1):
    return IntervalSystem(
        rng.normal(size=(m, n)),
        radius * rng.uniform(size=(m, n)),
        rng.normal(size=m),
        radius * rng.uniform(size=m),
    )


def admissible_points(s, rng, n_mix=20):
    """Points of the joined solution set: LP extreme points and Chebyshev centers of every
    feasible orthant piece, plus random convex combinations within each piece."""
    from islae.lp import chebyshev_center
    from islae.oracle import enumerate_orthants

    out = []
    for piece in enumerate_orthants(s):
        if not piece.feasible:
            continue
        ext = [r.x_opt for r in piece.box.results if r.optimal]
        c = chebyshev_center(piece.polyhedron)
        if c.status == "optimal":
            ext.append(c.center)
        ext = np.array(ext)
        w = rng.dirichlet(np.ones(len(ext)), size=n_mix)
        out.extend(ext)
        out.extend(w @ ext)
    return np.array(out)


ACCEPTANCE_LINES = []


def record_criterion(label, ok, detail=""):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else ""))
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
