"""Tuple kernel semantics, Gram assembly and dataset parsing."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oakern.assignment_kernel import (
    TupleObject,
    assignment_kernel,
    gram_matrix,
    parse_tuple_dataset,
    profit_matrix,
)
from oakern.base_kernel import Point, RBFKernel, constant_one
from oakern.counterexample import build_square_config, expected_gram_closed_form
from oakern.errors import InputError
from oakern.hungarian import brute_force_assignment

RBF1 = RBFKernel(gamma=1.0)

coords = st.integers(min_value=-20, max_value=20).map(lambda i: i / 4)
points = st.tuples(coords, coords)
tuple_objects = st.lists(points, min_size=1, max_size=6).map(
    lambda pts: TupleObject(elements=tuple(pts))
)


def square_tuple(pair):
    config = build_square_config(1.0)
    return TupleObject(elements=(config.points[pair[0]], config.points[pair[1]]), label=pair)


def test_known_pair_values():
    a = math.exp(-1.0)
    assert assignment_kernel(square_tuple("AB"), square_tuple("AC"), RBF1) == pytest.approx(
        1 + a, abs=1e-12
    )
    assert assignment_kernel(square_tuple("AB"), square_tuple("AB"), RBF1) == 2.0


def test_min_length_under_constant_one():
    x = TupleObject(elements=("1",) * 3)
    y = TupleObject(elements=("1",) * 5)
    assert assignment_kernel(x, y, constant_one()) == 3.0
    assert assignment_kernel(y, x, constant_one()) == 3.0


@given(tuple_objects, tuple_objects)
@settings(max_examples=100)
def test_symmetry(x, y):
    assert abs(
        assignment_kernel(x, y, RBF1) - assignment_kernel(y, x, RBF1)
    ) <= 1e-12


@given(tuple_objects, st.randoms(use_true_random=False))
def test_order_invariance(x, rnd):
    shuffled = list(x.elements)
    rnd.shuffle(shuffled)
    y = TupleObject(elements=tuple(shuffled))
    fixed = TupleObject(elements=((0.25, 0.5), (1.0, -0.75), (2.0, 0.0)))
    assert abs(
        assignment_kernel(x, fixed, RBF1) - assignment_kernel(y, fixed, RBF1)
    ) <= 1e-12


@given(tuple_objects)
def test_self_value_is_length(x):
    assert assignment_kernel(x, x, RBF1) == float(len(x))


@given(tuple_objects, tuple_objects)
def test_upper_bound(x, y):
    P = profit_matrix(x, y, RBF1)
    value = assignment_kernel(x, y, RBF1)
    assert value <= min(len(x), len(y)) * float(P.max()) + 1e-9


@given(tuple_objects, tuple_objects)
@settings(max_examples=100)
def test_matches_brute_force_oracle(x, y):
    P = profit_matrix(x, y, RBF1)
    assert abs(assignment_kernel(x, y, RBF1) - brute_force_assignment(P).value) <= 1e-12


@given(st.integers(1, 30), st.integers(1, 30))
def test_constant_one_gives_min_kernel(nx, ny):
    x = TupleObject(elements=("1",) * nx)
    y = TupleObject(elements=("1",) * ny)
    assert assignment_kernel(x, y, constant_one()) == float(min(nx, ny))


def test_square_pairs_gram_matches_closed_form():
    config = build_square_config(1.0)
    gram = gram_matrix(config.tuples(), config.base())
    closed = expected_gram_closed_form(1.0)
    assert gram.labels == closed.labels
    assert np.max(np.abs(gram.values - closed.values)) <= 1e-12


def test_single_tuple_gram_is_length():
    x = TupleObject(elements=((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)), label="x")
    gram = gram_matrix([x], RBF1)
    assert gram.labels == ("x",)
    assert gram.values[0, 0] == 3.0


def test_identical_tuples_gram_is_constant():
    x = TupleObject(elements=((0.5, 0.5), (1.5, -0.5)))
    gram = gram_matrix([x, x], RBF1)
    assert np.all(gram.values == gram.values[0, 0])


def test_gram_is_exactly_symmetric():
    rng = np.random.default_rng(3)
    tuples = [
        TupleObject(elements=tuple(map(tuple, rng.random((k, 2)))))
        for k in (1, 2, 3, 4)
    ]
    gram = gram_matrix(tuples, RBF1)
    assert np.array_equal(gram.values, gram.values.T)
    assert gram.labels == ("t0", "t1", "t2", "t3")


def test_empty_tuple_rejected():
    with pytest.raises(InputError):
        TupleObject(elements=())
    with pytest.raises(InputError):
        gram_matrix([], RBF1)


def test_parse_dataset_round_trip():
    obj = {
        "base_kernel": {"type": "rbf", "gamma": 1.0},
        "tuples": [
            {"label": "AB", "elements": [[0.0, 0.0], [1.0, 0.0]]},
            {"elements": [[1.0, 1.0]]},
        ],
    }
    base, tuples = parse_tuple_dataset(obj)
    assert base == RBF1
    assert tuples[0].label == "AB"
    assert tuples[0].elements == (Point((0.0, 0.0)), Point((1.0, 0.0)))
    assert tuples[1].label == "t1"


def test_parse_dataset_with_labels():
    obj = {
        "base_kernel": {"type": "constant_one"},
        "tuples": [{"elements": ["1", "1", "1"]}],
    }
    base, tuples = parse_tuple_dataset(obj)
    assert assignment_kernel(tuples[0], tuples[0], base) == 3.0


@pytest.mark.parametrize(
    "obj",
    [
        "nope",
        {"tuples": []},
        {"base_kernel": {"type": "rbf", "gamma": 1.0}, "tuples": []},
        {"base_kernel": {"type": "rbf", "gamma": 1.0}, "tuples": [{"elements": 3}]},
        {"base_kernel": {"type": "rbf", "gamma": 1.0}, "tuples": [{"elements": [7]}]},
        {"base_kernel": {"type": "rbf", "gamma": 1.0}, "tuples": ["x"]},
    ],
)
def test_parse_dataset_errors(obj):
    with pytest.raises(InputError):
        parse_tuple_dataset(obj)
