"""Overdetermined interval linear systems: single-orthant certificates, LP solving, error bounds."""

from ._validation import (
    DomainError,
    InputError,
    ISLAEError,
    NotMemberError,
    NumericalError,
    OrderingError,
    ParseError,
)
from .certificate import (
    CertificateReport,
    certify_and_solve,
    check_conditions,
    solution_polyhedron,
    split_rows,
)
from .error_bounds import alpha_bound, ls_perturbation_bound, solution_error_bound
from .estimator import IntervalLinearRegression
from .linalg import normal_least_squares, pseudoinverse, svd_extremes
from .lp import Polyhedron, bounding_box, chebyshev_center, feasible, min_margin, solve_lp, vertices_2d
from .model import (
    EndpointSystem,
    IntervalSystem,
    from_endpoints,
    load_system,
    parse_system,
    serialize_system,
    to_endpoints,
)
from .oettli_prager import construct_witness, membership, sign_pattern
from .oracle import cross_check, enumerate_orthants

__all__ = [
    "alpha_bound",
    "bounding_box",
    "CertificateReport",
    "certify_and_solve",
    "chebyshev_center",
    "check_conditions",
    "construct_witness",
    "cross_check",
    "DomainError",
    "EndpointSystem",
    "enumerate_orthants",
    "feasible",
    "from_endpoints",
    "InputError",
    "IntervalLinearRegression",
    "IntervalSystem",
    "ISLAEError",
    "load_system",
    "ls_perturbation_bound",
    "membership",
    "min_margin",
    "normal_least_squares",
    "NotMemberError",
    "NumericalError",
    "OrderingError",
    "parse_system",
    "ParseError",
    "Polyhedron",
    "pseudoinverse",
    "serialize_system",
    "sign_pattern",
    "solution_error_bound",
    "solution_polyhedron",
    "solve_lp",
    "split_rows",
    "svd_extremes",
    "to_endpoints",
    "vertices_2d",
]

__version__ = "0.1.0"
