"""Serialization round-trips and parser diagnostics."""

import pytest

from conelab import jsonio
from conelab.cones import Wedge, orthant
from conelab.errors import InputError
from conelab.linalg import RationalMatrix, RationalVector, Subspace


def test_wedge_round_trip():
    w = Wedge(3, [RationalVector([1, -2, 3]), RationalVector([0, 1, 0])])
    assert jsonio.parse_wedge(jsonio.wedge_to_json(w)) == w


def test_subspace_round_trip():
    sub = Subspace.from_vectors([RationalVector([1, 1, 0]), RationalVector([0, 0, 1])])
    assert jsonio.parse_subspace(jsonio.subspace_to_json(sub)) == sub


def test_matrix_round_trip():
    m = RationalMatrix([["1/2", 3], [-1, 0]])
    assert jsonio.parse_matrix(jsonio.matrix_to_json(m), "matrix") == m


def test_parse_wedge_requires_dim():
    with pytest.raises(InputError, match="dim"):
        jsonio.parse_wedge({"generators": []})


def test_parse_vector_names_location():
    with pytest.raises(InputError, match="functional"):
        jsonio.parse_vector({"not": "a list"}, "functional", 2)
    with pytest.raises(InputError, match="functional"):
        jsonio.parse_vector(["1", "2", "3"], "functional", 2)


def test_parse_rational_rejects_json_floats():
    with pytest.raises(InputError):
        jsonio.parse_rational(0.25, "entry")


def test_dumps_is_stable():
    payload = jsonio.wedge_to_json(orthant(2))
    assert jsonio.dumps(payload) == jsonio.dumps(payload)
    assert jsonio.dumps(payload).endswith("\n")


def test_load_json_reports_position():
    with pytest.raises(InputError, match="malformed JSON"):
        jsonio.load_json("{", "--in")
