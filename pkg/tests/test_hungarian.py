"""Assignment solver against the exhaustive oracle and its algebraic laws."""

import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from oakern.errors import InputError
from oakern.hungarian import Assignment, brute_force_assignment, solve_max_assignment

DATA = Path(__file__).parent / "data"

unit_floats = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, width=64)


def profit_matrices(max_rows=5, max_cols=6, elements=unit_floats):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: arrays(np.float64, (m, n), elements=elements)
        )
    )


def selected_sum(P, assignment: Assignment):
    P = np.asarray(P, dtype=float)
    total = 0.0
    for small, large in assignment.pairs:
        i, j = (large, small) if assignment.side == "columns" else (small, large)
        total += P[i, j]
    return total


def test_single_cell():
    asg = solve_max_assignment([[5.0]])
    assert asg.value == 5.0
    assert asg.pairs == ((0, 0),)
    assert asg.side == "rows"
    assert brute_force_assignment([[5.0]]).value == 5.0


def test_two_by_two_cross_pairing():
    # profit matrix [[a^2, a], [a, a^2]] built from the unit square's RBF
    # values; the off-diagonal pairing wins since a > a^2 for 0 < a < 1
    a = math.exp(-1.0)
    P = [[a * a, a], [a, a * a]]
    asg = solve_max_assignment(P)
    assert asg.pairs == ((0, 1), (1, 0))
    assert asg.value == pytest.approx(2 * a, abs=1e-12)
    assert asg.value == pytest.approx(0.73575888234288465, abs=1e-12)
    brute = brute_force_assignment(P)
    assert brute.pairs == asg.pairs
    assert brute.value == asg.value


def test_brute_force_identity_optimum():
    asg = brute_force_assignment([[1.0, 0.0], [0.0, 1.0]])
    assert asg.value == 2.0
    assert asg.pairs == ((0, 0), (1, 1))


def test_fixture_2x2_matches_brute_force():
    P = np.loadtxt(DATA / "profits_2x2.csv", delimiter=",", ndmin=2)
    a = math.exp(-1.0)
    assert solve_max_assignment(P).value == pytest.approx(2 * a, abs=1e-12)


def test_fixture_3x5_hand_enumerated_optimum():
    P = np.loadtxt(DATA / "profits_3x5.csv", delimiter=",", ndmin=2)
    asg = solve_max_assignment(P)
    # hand enumeration: 0.9 + 0.6 + 0.9 beats every alternative
    assert asg.value == pytest.approx(2.4, abs=1e-12)
    assert asg.pairs == ((0, 0), (1, 2), (2, 1))
    assert brute_force_assignment(P).pairs == asg.pairs


def test_lexicographic_tie_break_on_constant_matrices():
    assert solve_max_assignment(np.ones((3, 3))).pairs == ((0, 0), (1, 1), (2, 2))
    assert solve_max_assignment(np.ones((2, 4))).pairs == ((0, 0), (1, 1))
    wide = solve_max_assignment(np.ones((4, 2)))
    assert wide.side == "columns"
    assert wide.pairs == ((0, 0), (1, 1))
    assert brute_force_assignment(np.ones((3, 3))).pairs == ((0, 0), (1, 1), (2, 2))


@given(profit_matrices())
@settings(max_examples=150)
def test_matches_brute_force(P):
    asg = solve_max_assignment(P)
    oracle = brute_force_assignment(P)
    assert abs(asg.value - oracle.value) <= 1e-12
    assert asg.side == oracle.side
    assert asg.value == pytest.approx(selected_sum(P, asg), abs=1e-12)


@given(profit_matrices(elements=st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0])))
@settings(max_examples=150)
def test_exact_ties_agree_with_oracle(P):
    # dyadic entries make every comparison exact, so the canonicalization
    # must reproduce the oracle's lexicographic choice bit for bit
    asg = solve_max_assignment(P)
    oracle = brute_force_assignment(P)
    assert asg.value == oracle.value
    assert asg.pairs == oracle.pairs


@given(profit_matrices(), st.randoms(use_true_random=False))
def test_permutation_invariance(P, rnd):
    rows = list(range(P.shape[0]))
    cols = list(range(P.shape[1]))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    shuffled = P[np.ix_(rows, cols)]
    assert abs(solve_max_assignment(P).value - solve_max_assignment(shuffled).value) <= 1e-12


@given(profit_matrices(), st.floats(min_value=0.0, max_value=2.0, allow_nan=False))
def test_constant_shift(P, c):
    base = solve_max_assignment(P).value
    shifted = solve_max_assignment(P + c).value
    assert abs(shifted - (base + c * min(P.shape))) <= 1e-12


@given(profit_matrices())
def test_transpose_symmetry(P):
    assert abs(solve_max_assignment(P).value - solve_max_assignment(P.T).value) <= 1e-12


@given(profit_matrices())
def test_pairing_is_injective(P):
    asg = solve_max_assignment(P)
    assert len(asg.pairs) == min(P.shape)
    domain = [i for i, _ in asg.pairs]
    image = [j for _, j in asg.pairs]
    assert domain == sorted(set(domain))
    assert len(set(image)) == len(image)


@pytest.mark.parametrize(
    "bad",
    [
        [[1.0, -0.5], [0.0, 1.0]],
        [[float("nan")]],
        [[float("inf")]],
        np.zeros((0, 3)),
        [1.0, 2.0],
    ],
)
def test_invalid_profits_rejected(bad):
    with pytest.raises(InputError):
        solve_max_assignment(bad)
    with pytest.raises(InputError):
        brute_force_assignment(bad)


def test_oracle_size_cap():
    with pytest.raises(InputError):
        brute_force_assignment(np.ones((9, 9)))
    # rectangular matrices only cap the shorter side
    assert brute_force_assignment(np.ones((2, 9))).value == 2.0


def test_seeded_rectangular_corpus():
    rng = np.random.default_rng(20240811)
    for _ in range(60):
        m = int(rng.integers(1, 8))
        n = int(rng.integers(1, 8))
        P = rng.random((m, n))
        asg = solve_max_assignment(P)
        oracle = brute_force_assignment(P)
        assert abs(asg.value - oracle.value) <= 1e-12
        assert asg.pairs == oracle.pairs
