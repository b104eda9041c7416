import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacpair.startpoints import (EXCLUSIVE, INCLUSIVE, candidate_data, check_candidate,
                                 filter_by_direction, possible_starting_points)


def test_candidate_data_known_row():
    direction, s, n1, n2 = candidate_data(1, 24, 9, 12, 3)
    assert (tuple(direction), s, n1, n2) == ((1, -2), 6, 6, 3)


def test_filter_by_direction():
    cands = possible_starting_points(1, 8, 3)
    assert [c.point for c in filter_by_direction(cands, (2, -5))] == [(3, 1)]


def test_exclusive_is_subset():
    inc = {c.point for c in possible_starting_points(1, 8, 3, upper=INCLUSIVE)}
    exc = {c.point for c in possible_starting_points(1, 8, 3, upper=EXCLUSIVE)}
    assert exc < inc and inc - exc == {(6, 2)}


@pytest.mark.parametrize("args", [(0, 8, 3), (1, 3, 3), (1, 8, 0)])
def test_bad_arguments(args):
    with pytest.raises(ValueError):
        possible_starting_points(*args)


def test_to_dict_serializes():
    d = possible_starting_points(1, 8, 3)[0].to_dict()
    assert d["direction"] == [1, -2] and (d["c"], d["d"]) == (2, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(2, 9), st.integers(1, 4), st.sampled_from([INCLUSIVE, EXCLUSIVE]))
def test_candidates_are_consistent(l, a, b, upper):
    a = a + b * l  # ensure a > b*l
    for c in possible_starting_points(l, a, b, upper=upper):
        assert check_candidate(c, a, b, upper)
