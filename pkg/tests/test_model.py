import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from islae import (
    EndpointSystem,
    InputError,
    IntervalSystem,
    OrderingError,
    ParseError,
    from_endpoints,
    load_system,
    parse_system,
    serialize_system,
    to_endpoints,
)
from islae.model import system_to_document

from conftest import data_path


def test_point_interval_has_zero_radii():
    s = from_endpoints(EndpointSystem(np.eye(2), np.eye(2), [1.0, 1.0], [1.0, 1.0]))
    assert np.all(s.A_r == 0) and np.all(s.b_r == 0)
    np.testing.assert_array_equal(s.A_c, np.eye(2))


def test_symmetric_interval():
    s = from_endpoints(EndpointSystem([[0.0]], [[2.0]], [1.0], [3.0]))
    assert (s.A_c[0, 0], s.A_r[0, 0], s.b_c[0], s.b_r[0]) == (1.0, 1.0, 2.0, 1.0)
    e = to_endpoints(s)
    assert (e.A_lo[0, 0], e.A_hi[0, 0], e.b_lo[0], e.b_hi[0]) == (0.0, 2.0, 1.0, 3.0)


def test_inverted_endpoints_name_the_entry():
    with pytest.raises(OrderingError, match=r"A_lo\[0\]\[1\]"):
        from_endpoints(EndpointSystem([[0.0, 3.0]], [[1.0, 2.0]], [0.0], [0.0]))
    with pytest.raises(OrderingError, match=r"b_lo\[1\]"):
        from_endpoints(EndpointSystem([[0.0], [0.0]], [[1.0], [1.0]], [0.0, 5.0], [1.0, 4.0]))


def test_rejects_negative_radius_and_shape_mismatch():
    with pytest.raises(InputError, match="negative"):
        IntervalSystem([[1.0]], [[-0.1]], [0.0], [0.0])
    with pytest.raises(InputError, match="negative"):
        IntervalSystem([[1.0]], [[0.0]], [0.0], [-1.0])
    with pytest.raises(InputError, match="shape"):
        IntervalSystem([[1.0, 2.0]], [[0.0]], [0.0], [0.0])
    with pytest.raises(InputError, match="length"):
        IntervalSystem([[1.0]], [[0.0]], [0.0, 1.0], [0.0, 0.0])
    with pytest.raises(InputError, match="non-finite"):
        IntervalSystem([[np.nan]], [[0.0]], [0.0], [0.0])


def test_system_arrays_are_read_only():
    s = IntervalSystem([[1.0]], [[0.0]], [0.0], [0.0])
    with pytest.raises(ValueError):
        s.A_c[0, 0] = 2.0


def test_minimal_document():
    s = parse_system('{"form": "midpoint", "A_c": [[2]], "A_r": [[0]], "b_c": [1], "b_r": [0]}')
    assert s.shape == (1, 1) and s.A_c[0, 0] == 2.0


def test_shipped_kinetics_file(kinetics_system):
    s = load_system(data_path("kinetics_system.json"))
    assert s.shape == (9, 2)
    assert s == kinetics_system


def test_endpoint_document_matches_midpoint_twin(disconnected_bounded):
    text = serialize_system(disconnected_bounded, form="endpoints")
    assert json.loads(text)["form"] == "endpoints"
    back = parse_system(text)
    for k in ("A_c", "A_r", "b_c", "b_r"):
        np.testing.assert_allclose(getattr(back, k), getattr(disconnected_bounded, k), atol=1e-15)


def test_extra_keys_ignored():
    doc = system_to_document(IntervalSystem([[1.0]], [[0.0]], [1.0], [0.0]))
    doc["x"] = [1.0]
    doc["note"] = "anything"
    assert parse_system(json.dumps(doc)).shape == (1, 1)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("not json", "invalid JSON"),
        ("[1, 2]", "JSON object"),
        ('{"form": "polar"}', "form"),
        ('{"form": "midpoint", "A_r": [[0]], "b_c": [1], "b_r": [0]}', "'A_c'"),
        ('{"form": "midpoint", "A_c": [[1, 2], [3]], "A_r": [[0]], "b_c": [1], "b_r": [0]}', "row 1"),
        ('{"form": "midpoint", "A_c": [["a"]], "A_r": [[0]], "b_c": [1], "b_r": [0]}', "number"),
        ('{"form": "midpoint", "A_c": [[1]], "A_r": [[-1]], "b_c": [1], "b_r": [0]}', "negative"),
        ('{"form": "endpoints", "A_lo": [[2]], "A_hi": [[1]], "b_lo": [1], "b_hi": [1]}', "A_lo"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_system(text)


systems = st.tuples(st.integers(1, 8), st.integers(1, 5), st.integers(0, 2**32 - 1))


def _system(args):
    m, n, seed = args
    rng = np.random.default_rng(seed)
    scale = 10.0 ** rng.uniform(-6, 6)
    return IntervalSystem(
        scale * rng.normal(size=(m, n)),
        scale * rng.uniform(size=(m, n)),
        scale * rng.normal(size=m),
        scale * rng.uniform(size=m),
    )


@settings(max_examples=80, deadline=None)
@given(systems)
def test_endpoint_round_trip(args):
    s = _system(args)
    back = from_endpoints(to_endpoints(s))
    scale = max(np.max(np.abs(s.A_c)), np.max(s.A_r), np.max(np.abs(s.b_c)), np.max(s.b_r))
    for k in ("A_c", "A_r", "b_c", "b_r"):
        np.testing.assert_allclose(getattr(back, k), getattr(s, k), rtol=0, atol=4e-16 * scale)


@settings(max_examples=80, deadline=None)
@given(systems)
def test_midpoint_serialization_is_exact(args):
    s = _system(args)
    assert parse_system(serialize_system(s)) == s
