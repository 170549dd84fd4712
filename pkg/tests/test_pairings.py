from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from guevertex.budget import double_factorial
from guevertex.errors import BudgetError, UsageError
from guevertex.pairings import (
    connected_moment,
    enumerate_pair_partitions,
    face_count,
    genus_census,
    is_connected,
    set_partitions,
    vertex_moment,
)
from guevertex.series import NLaurent


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_pairing_counts(m):
    count = sum(1 for _ in enumerate_pair_partitions(2 * m))
    assert count == double_factorial(2 * m - 1)


def test_face_fixtures_single_square():
    # tr M^4: two planar gluings with 3 faces, one crossing with 1 face
    assert face_count([4], [1, 0, 3, 2]) == 3
    assert face_count([4], [3, 2, 1, 0]) == 3
    assert face_count([4], [2, 3, 0, 1]) == 1


def test_face_fixture_disconnected():
    # two 2-gons glued to themselves: two components, 2 faces each
    mate = [1, 0, 3, 2]
    assert face_count([2, 2], mate) == 4
    assert not is_connected([2, 2], mate)
    assert is_connected([2, 2], [2, 3, 0, 1])


def test_vertex_moment_fixtures():
    assert vertex_moment([0]) == NLaurent({0: 1})
    assert vertex_moment([2]) == NLaurent({0: 1})
    assert vertex_moment([4]) == NLaurent({0: 2, 2: 1})
    assert vertex_moment([6]) == NLaurent({0: 5, 2: 10})
    assert vertex_moment([8]) == NLaurent({0: 14, 2: 70, 4: 21})
    assert vertex_moment([3, 3]) == NLaurent({2: 12, 4: 3})
    assert vertex_moment([3]).is_zero()


def test_connected_moment_fixtures():
    assert connected_moment([1, 1]) == NLaurent({2: 1})
    assert connected_moment([2, 2]) == NLaurent({2: 2})
    assert connected_moment([1, 1, 2]) == NLaurent({4: 2})
    assert connected_moment([3, 3]) == NLaurent({2: 12, 4: 3})


@pytest.mark.parametrize("degrees", [[2, 2], [1, 1, 2], [2, 2, 2], [4, 2]])
def test_moment_cumulant_relation(degrees):
    """Full moment = sum over vertex set partitions of products of cumulants."""
    total = NLaurent({})
    for partition in set_partitions(list(range(len(degrees)))):
        term = NLaurent({0: 1})
        for block in partition:
            term = term * connected_moment([degrees[i] for i in block])
        total = total + term
    assert total == vertex_moment(degrees)


@pytest.mark.parametrize("degrees", [[3, 3], [1, 1, 2], [4, 4]])
def test_genus_census_matches_connected_moment(degrees):
    n = len(degrees)
    census = genus_census(degrees)
    rebuilt = NLaurent({2 * g + 2 * n - 2: Fraction(c) for g, c in census.items()})
    assert rebuilt == connected_moment(degrees)


def test_genus_census_two_triangles():
    assert genus_census([3, 3]) == {0: 12, 1: 3}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=3))
def test_nu_powers_even_and_nonnegative(degrees):
    moment = vertex_moment(degrees)
    for e in moment.degrees():
        assert e >= 0
        assert e % 2 == 0


def test_budget_guard(monkeypatch):
    monkeypatch.setenv("RMT_BUDGET", "10")
    with pytest.raises(BudgetError):
        list(enumerate_pair_partitions(8))
    assert sum(1 for _ in enumerate_pair_partitions(8, skip_budget=True)) == 105


def test_negative_degree_rejected():
    with pytest.raises(UsageError):
        vertex_moment([2, -1])
