import math
from fractions import Fraction

import pytest
import scipy.special

from guevertex.closed_forms import (
    bessel_u_coefficient,
    bessel_u_limit,
    catalan,
    exact_one_point_moment,
    genus_coefficient,
    triple_sum_I,
    triple_sum_scaled,
    u_series,
    u_series_coefficient,
)
from guevertex.errors import UsageError
from guevertex.pairings import vertex_moment
from guevertex.series import NLaurent


def test_catalan_sequence():
    assert [catalan(k) for k in range(9)] == [1, 1, 2, 5, 14, 42, 132, 429, 1430]


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_closed_form_matches_pairing_oracle(k):
    assert exact_one_point_moment(k).value == vertex_moment([2 * k])


def test_numeric_evaluation():
    result = exact_one_point_moment(2, N=5)
    assert result.value == Fraction(51, 25)
    assert (result.k, result.N) == (2, 5)


def test_u_series_fixtures():
    series = u_series(6)
    assert u_series_coefficient(series, 4) == NLaurent(
        {0: Fraction(1, 12), 2: Fraction(1, 24)}
    )
    assert u_series_coefficient(series, 6) == NLaurent(
        {0: Fraction(1, 144), 2: Fraction(1, 72)}
    )


def test_u_series_planar_terms_are_catalan():
    series = u_series(8)
    for k in range(5):
        got = u_series_coefficient(series, 2 * k).coeff(0)
        assert got == Fraction(catalan(k), math.factorial(2 * k))


def test_bessel_coefficient_signs():
    assert bessel_u_coefficient(0) == 1
    assert bessel_u_coefficient(1) == Fraction(-1, 2)
    assert bessel_u_coefficient(2) == Fraction(2, 24)


@pytest.mark.parametrize("t", [0.3, 1.7, 4.2])
def test_bessel_limit_matches_scipy(t):
    want = scipy.special.j1(2 * t) / t
    assert abs(bessel_u_limit(t) - want) < 1e-12


def test_genus_coefficient_fixtures():
    # tr M^4: 2(1 + nu^2/2); tr M^8: 14(1 + 5 nu^2 + 3/2 nu^4)
    assert genus_coefficient(2, 1) == Fraction(1, 2)
    assert genus_coefficient(4, 1) == 5
    assert genus_coefficient(4, 2) == Fraction(3, 2)
    with pytest.raises(UsageError):
        genus_coefficient(4, 3)


@pytest.mark.parametrize("triple", [(2, 3, 4), (5, 5, 5), (1, 1, 1)])
def test_scaled_triple_sum_consistency(triple):
    k1, k2, k3 = triple
    scale = math.factorial(2 * k1) * math.factorial(2 * k2) * math.factorial(2 * k3)
    assert scale * triple_sum_I(k1, k2, k3) == triple_sum_scaled(k1, k2, k3)


def test_triple_sum_reference_point():
    value = float(triple_sum_scaled(30, 15, 50))
    assert abs(value - 7.4632e55) <= 0.005e55
