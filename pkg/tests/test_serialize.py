"""17-significant-digit serialization: lossless and byte-deterministic."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oakern.errors import InputError
from oakern.serialize import (
    dumps_json,
    format_float,
    loads_json,
    matrix_from_csv,
    matrix_to_csv,
)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_format_float_round_trips_binary64(x):
    assert float(format_float(x)) == x


def test_format_float_rejects_non_finite():
    with pytest.raises(InputError):
        format_float(float("nan"))
    with pytest.raises(InputError):
        format_float(float("inf"))


def test_dumps_json_is_deterministic_and_parseable():
    obj = {"name": "g", "values": [[1.0, 0.5], [0.5, 1.0]], "flag": True, "n": 3, "none": None}
    text = dumps_json(obj)
    assert text == dumps_json(obj)
    assert text.endswith("\n")
    assert loads_json(text) == obj


def test_dumps_json_rejects_unknown_types():
    with pytest.raises(TypeError):
        dumps_json({"x": object()})
    with pytest.raises(TypeError):
        dumps_json({1: "non-string key"})


@given(
    st.lists(
        st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=3, max_size=3),
        min_size=1,
        max_size=4,
    )
)
def test_csv_round_trip_is_exact(rows):
    text = matrix_to_csv(rows)
    back = matrix_from_csv(text)
    assert np.array_equal(np.array(back), np.array(rows))


def test_csv_errors():
    with pytest.raises(InputError):
        matrix_from_csv("")
    with pytest.raises(InputError):
        matrix_from_csv("1.0,2.0\n3.0\n")
    with pytest.raises(InputError):
        matrix_from_csv("1.0,abc\n")
