"""Interval system container in midpoint-radius form, endpoint conversion and JSON I/O.

System document layout::

    {"form": "midpoint", "A_c": [[...], ...], "A_r": [[...], ...], "b_c": [...], "b_r": [...]}
    {"form": "endpoints", "A_lo": [[...], ...], "A_hi": [[...], ...], "b_lo": [...], "b_hi": [...]}

Extra top-level keys (for instance a witness point ``"x"``) are carried through untouched.
"""

import json
from dataclasses import dataclass

import numpy as np

from ._validation import InputError, OrderingError, ParseError, as_matrix, as_vector

# endpoint conversions tolerate this much negative radius before calling it an error
RADIUS_DUST = 1e-14


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class IntervalSystem:
    """``A x = b`` with ``A_c - A_r <= A <= A_c + A_r`` and ``b_c - b_r <= b <= b_c + b_r``."""

    A_c: np.ndarray
    A_r: np.ndarray
    b_c: np.ndarray
    b_r: np.ndarray

    def __post_init__(self):
        A_c = as_matrix(self.A_c, "A_c")
        A_r = as_matrix(self.A_r, "A_r")
        b_c = as_vector(self.b_c, "b_c")
        b_r = as_vector(self.b_r, "b_r")
        if A_r.shape != A_c.shape:
            raise InputError(f"A_r shape {A_r.shape} differs from A_c shape {A_c.shape}")
        m = A_c.shape[0]
        if b_c.shape[0] != m or b_r.shape[0] != m:
            raise InputError(
                f"right-hand sides must have length {m}, got b_c={b_c.shape[0]}, b_r={b_r.shape[0]}"
            )
        if np.any(A_r < 0):
            i, j = np.argwhere(A_r < 0)[0]
            raise InputError(f"A_r[{i}][{j}] = {A_r[i, j]!r} is negative")
        if np.any(b_r < 0):
            i = int(np.argmax(b_r < 0))
            raise InputError(f"b_r[{i}] = {b_r[i]!r} is negative")
        for name, arr in (("A_c", A_c), ("A_r", A_r), ("b_c", b_c), ("b_r", b_r)):
            object.__setattr__(self, name, _frozen(arr))

    @property
    def m(self):
        return self.A_c.shape[0]

    @property
    def n(self):
        return self.A_c.shape[1]

    @property
    def shape(self):
        return self.A_c.shape

    def __eq__(self, other):
        if not isinstance(other, IntervalSystem):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, k), getattr(other, k)) for k in ("A_c", "A_r", "b_c", "b_r")
        )

    def __repr__(self):
        return f"IntervalSystem(m={self.m}, n={self.n})"

    def with_radii(self, A_r=None, b_r=None):
        return IntervalSystem(
            self.A_c, self.A_r if A_r is None else A_r, self.b_c, self.b_r if b_r is None else b_r
        )


@dataclass(frozen=True, eq=False)
class EndpointSystem:
    A_lo: np.ndarray
    A_hi: np.ndarray
    b_lo: np.ndarray
    b_hi: np.ndarray

    def __post_init__(self):
        A_lo = as_matrix(self.A_lo, "A_lo")
        A_hi = as_matrix(self.A_hi, "A_hi")
        b_lo = as_vector(self.b_lo, "b_lo")
        b_hi = as_vector(self.b_hi, "b_hi")
        if A_lo.shape != A_hi.shape:
            raise InputError(f"A_lo shape {A_lo.shape} differs from A_hi shape {A_hi.shape}")
        if b_lo.shape != b_hi.shape or b_lo.shape[0] != A_lo.shape[0]:
            raise InputError("b_lo and b_hi must both have one entry per row of A")
        for name, arr in (("A_lo", A_lo), ("A_hi", A_hi), ("b_lo", b_lo), ("b_hi", b_hi)):
            object.__setattr__(self, name, _frozen(arr))

    def __eq__(self, other):
        if not isinstance(other, EndpointSystem):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in ("A_lo", "A_hi", "b_lo", "b_hi")
        )


def _half_width(lo, hi, name):
    r = (hi - lo) / 2.0
    bad = r < -RADIUS_DUST
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        where = "[" + "][".join(str(i) for i in idx) + "]"
        raise OrderingError(f"{name}_lo{where} > {name}_hi{where} ({lo[idx]!r} > {hi[idx]!r})")
    return np.maximum(r, 0.0)


def from_endpoints(e):
    """Convert an EndpointSystem to midpoint-radius form."""
    A_r = _half_width(e.A_lo, e.A_hi, "A")
    b_r = _half_width(e.b_lo, e.b_hi, "b")
    return IntervalSystem((e.A_lo + e.A_hi) / 2.0, A_r, (e.b_lo + e.b_hi) / 2.0, b_r)


def to_endpoints(s):
    return EndpointSystem(s.A_c - s.A_r, s.A_c + s.A_r, s.b_c - s.b_r, s.b_c + s.b_r)


def _matrix_field(doc, key):
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    rows = doc[key]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"field {key!r}: expected a nonempty array of row arrays")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"field {key!r}: row {i} has {len(row)} entries, row 0 has {width}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"field {key!r}[{i}][{j}]: expected a number, got {v!r}")
    try:
        return as_matrix(rows, key)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def _vector_field(doc, key):
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    vals = doc[key]
    if not isinstance(vals, list) or not vals:
        raise ParseError(f"field {key!r}: expected a nonempty array of numbers")
    for i, v in enumerate(vals):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"field {key!r}[{i}]: expected a number, got {v!r}")
    try:
        return as_vector(vals, key)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def system_from_document(doc):
    """Build an IntervalSystem from an already-decoded JSON object."""
    if not isinstance(doc, dict):
        raise ParseError("system document must be a JSON object")
    form = doc.get("form")
    try:
        if form == "midpoint":
            return IntervalSystem(
                _matrix_field(doc, "A_c"),
                _matrix_field(doc, "A_r"),
                _vector_field(doc, "b_c"),
                _vector_field(doc, "b_r"),
            )
        if form == "endpoints":
            return from_endpoints(
                EndpointSystem(
                    _matrix_field(doc, "A_lo"),
                    _matrix_field(doc, "A_hi"),
                    _vector_field(doc, "b_lo"),
                    _vector_field(doc, "b_hi"),
                )
            )
    except ParseError:
        raise
    except InputError as exc:
        raise ParseError(str(exc)) from None
    raise ParseError(f"field 'form' must be 'midpoint' or 'endpoints', got {form!r}")


def parse_system(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return system_from_document(doc)


def system_to_document(s, form="midpoint"):
    if form == "midpoint":
        return {
            "form": "midpoint",
            "A_c": s.A_c.tolist(),
            "A_r": s.A_r.tolist(),
            "b_c": s.b_c.tolist(),
            "b_r": s.b_r.tolist(),
        }
    if form == "endpoints":
        e = to_endpoints(s)
        return {
            "form": "endpoints",
            "A_lo": e.A_lo.tolist(),
            "A_hi": e.A_hi.tolist(),
            "b_lo": e.b_lo.tolist(),
            "b_hi": e.b_hi.tolist(),
        }
    raise ValueError(f"unknown form {form!r}")


def serialize_system(s, form="midpoint", indent=2):
    # json writes floats with repr(), the shortest string that round-trips exactly
    return json.dumps(system_to_document(s, form), indent=indent)


def load_system(path):
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


def save_system(s, path, form="midpoint"):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_system(s, form))
        fh.write("\n")
