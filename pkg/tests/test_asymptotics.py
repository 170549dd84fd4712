import math

import pytest
from scipy import integrate

from guevertex.asymptotics import (
    compare_scaling_ray,
    exact_one_point_float,
    pairwise_merge_sum,
    scaling_one_point,
    semicircle_density,
    semicircle_moment,
    subleading_one_point_factor,
    three_point_leading,
    triple_sum_asymptotic,
    two_point_large_n,
)
from guevertex.closed_forms import catalan
from guevertex.errors import UsageError


def test_scaling_form_value():
    # 4^k k^{-3/2} / sqrt(pi), exponential factor dropped at N=None
    k = 16
    want = 4.0**k * k**-1.5 / math.sqrt(math.pi)
    assert scaling_one_point(k) == pytest.approx(want, rel=1e-12)
    assert scaling_one_point(k, N=10**9) == pytest.approx(want, rel=1e-6)


def test_scaling_approaches_catalan_asymptote():
    """The pure form overshoots Catalan by 9/(8k) + O(1/k^2)."""
    for k in (40, 80, 160):
        ratio = scaling_one_point(k) / catalan(k)
        assert abs(ratio - 1 - 9 / (8 * k)) < 2.0 / k**2


def test_subleading_factor_value():
    assert subleading_one_point_factor(8) == 1 - 21 / 64


def test_exact_float_matches_fractions():
    assert exact_one_point_float(2, 5) == pytest.approx(51 / 25, rel=1e-14)


def test_compare_ray_shape():
    rows = compare_scaling_ray(1.0, [27, 64])
    assert [(r.k, r.N) for r in rows] == [(9, 27), (16, 64)]
    for r in rows:
        assert r.relative_error == pytest.approx(
            abs(r.exact_value - r.asymptotic_value) / r.exact_value
        )


def test_semicircle_density_normalized():
    mass, _ = integrate.quad(semicircle_density, -2, 2)
    assert mass == pytest.approx(1.0, abs=1e-12)
    assert semicircle_density(2.5) == 0.0


@pytest.mark.parametrize("k", [0, 1, 3, 6])
def test_semicircle_moments_are_catalan(k):
    assert semicircle_moment(k) == pytest.approx(catalan(k), rel=1e-12)


def test_merge_identity():
    for triple in [(1, 2, 3), (10, 20, 30), (7, 7, 7)]:
        lhs = three_point_leading(*triple)
        assert lhs == pytest.approx(pairwise_merge_sum(*triple) / 2, rel=1e-14)


def test_two_point_large_n_symmetry():
    assert two_point_large_n(3, 8) == two_point_large_n(8, 3)
    want = math.sqrt(24) * 4.0**11 / (math.pi * 11)
    assert two_point_large_n(3, 8) == pytest.approx(want, rel=1e-14)


def test_triple_sum_asymptotic_reference():
    assert triple_sum_asymptotic(30, 15, 50) == pytest.approx(7.4864e55, rel=1e-3)


@pytest.mark.parametrize(
    "call",
    [
        lambda: scaling_one_point(0),
        lambda: three_point_leading(0, 1, 1),
        lambda: pairwise_merge_sum(1, 0, 1),
        lambda: two_point_large_n(0, 1),
    ],
)
def test_domain_errors(call):
    with pytest.raises(UsageError):
        call()
