import pytest

from guevertex.budget import double_factorial
from guevertex.errors import UsageError
from guevertex.pairings import enumerate_pair_partitions, face_count
from guevertex.weighted_pairings import (
    WeightedPropagator,
    cubic_moment_n2_vec,
    weighted_moment,
)

V2_VEC = [15, 36, 36, 15]
V4_VEC = [10395, 22680, 22680, 20790, 22680, 22680, 10395]


def test_propagator_symmetry():
    prop = WeightedPropagator(3)
    for i in range(3):
        for j in range(3):
            assert prop.weight_parts(i, j) == prop.weight_parts(j, i)


def test_propagator_index_count_bounds():
    with pytest.raises(UsageError):
        WeightedPropagator(0)
    with pytest.raises(UsageError):
        WeightedPropagator(5)


def test_single_index_moments():
    # one eigenvalue: every face carries the same weight q
    assert weighted_moment([2], 1).terms == {(1,): 1}
    assert weighted_moment([4], 1).terms == {(2,): 3}


def test_odd_moment_vanishes():
    assert weighted_moment([3], 2).is_zero()


def test_non_polynomial_moment_rejected():
    with pytest.raises(UsageError):
        weighted_moment([2], 2)


def test_cubic_vec_fixtures():
    assert cubic_moment_n2_vec(2) == V2_VEC
    assert cubic_moment_n2_vec(4) == V4_VEC


@pytest.mark.parametrize("v", [2, 4])
def test_cubic_vec_invariants(v):
    vec = cubic_moment_n2_vec(v)
    assert len(vec) == 3 * v // 2 + 1
    assert vec == vec[::-1]
    # the all-q1 coefficient counts bare pairings
    assert vec[0] == double_factorial(3 * v - 1)


@pytest.mark.parametrize("v", [2, 4])
def test_cubic_vec_uniform_reduction(v):
    """At q1 = q2 every edge weighs q, so the total is sum over pairings of 2^F."""
    degrees = [3] * v
    want = sum(
        2 ** face_count(degrees, list(mate))
        for mate in enumerate_pair_partitions(3 * v)
    )
    assert sum(cubic_moment_n2_vec(v)) == want


@pytest.mark.parametrize("v", [2, 4])
def test_generic_path_agrees_with_cubic_fast_path(v):
    generic = weighted_moment([3] * v, 2)
    vec = cubic_moment_n2_vec(v)
    edges_n = 3 * v // 2
    for i, coeff in enumerate(vec):
        assert generic.coeff((i, edges_n - i)) == coeff


@pytest.mark.parametrize("v", [0, 1, 3])
def test_cubic_vec_rejects_bad_v(v):
    with pytest.raises(UsageError):
        cubic_moment_n2_vec(v)
