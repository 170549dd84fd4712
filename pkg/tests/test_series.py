from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from guevertex.errors import InternalError, UsageError
from guevertex.series import MultiSeries, NLaurent, divide_linear, series_exp, series_log

VARS = ("x", "y")
CUTOFF = 6


def _exponents():
    return st.tuples(st.integers(0, CUTOFF), st.integers(0, CUTOFF)).filter(
        lambda e: sum(e) <= CUTOFF
    )


def _coeffs():
    return st.fractions(min_value=-4, max_value=4, max_denominator=12)


def _series(min_degree=0):
    exps = _exponents().filter(lambda e: sum(e) >= min_degree)
    return st.dictionaries(exps, _coeffs(), max_size=6).map(
        lambda terms: MultiSeries(VARS, CUTOFF, terms)
    )


@settings(max_examples=80, deadline=None)
@given(_series(), _series(), _series())
def test_ring_axioms(a, b, c):
    zero = MultiSeries.zero(VARS, CUTOFF)
    one = MultiSeries.const(VARS, CUTOFF, 1)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + zero == a
    assert a * one == a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == zero


@settings(max_examples=60, deadline=None)
@given(_series(min_degree=1))
def test_exp_log_roundtrip(f):
    assert series_log(series_exp(f)) == f


@settings(max_examples=60, deadline=None)
@given(_series())
def test_json_roundtrip(f):
    assert MultiSeries.from_json(f.to_json()) == f


def test_json_golden():
    f = MultiSeries(VARS, 3, {(1, 0): Fraction(1, 2), (0, 2): Fraction(-3)})
    assert f.to_json() == {
        "vars": ["x", "y"],
        "cutoff": 3,
        "terms": [
            {"exp": [0, 2], "num": "-3", "den": "1"},
            {"exp": [1, 0], "num": "1", "den": "2"},
        ],
    }


def test_coeff_beyond_cutoff_rejected():
    f = MultiSeries.const(VARS, 3, 1)
    with pytest.raises(UsageError):
        f.coeff((2, 2))


def test_truncated_product_drops_high_degree():
    x = MultiSeries.variable(VARS, 2, "x")
    assert (x * x * x).is_zero()


def test_divide_linear_recovers_factor():
    x = MultiSeries.variable(VARS, 8, "x")
    y = MultiSeries.variable(VARS, 8, "y")
    f = MultiSeries.const(VARS, 8, 1) + x + 2 * y + x * y
    assert divide_linear((x + y) * f, "x", "y") == f


def test_divide_linear_difference_sign():
    x = MultiSeries.variable(VARS, 8, "x")
    y = MultiSeries.variable(VARS, 8, "y")
    assert divide_linear(x * x - y * y, "x", "y", sign=-1) == x + y


def test_divide_linear_remainder_is_a_bug():
    x = MultiSeries.variable(VARS, 8, "x")
    with pytest.raises(InternalError):
        divide_linear(x, "x", "y")


@pytest.mark.parametrize(
    "kwargs",
    [
        {"a": "x", "b": "x"},
        {"a": "z", "b": "y"},
        {"a": "x", "b": "y", "sign": 2},
    ],
)
def test_divide_linear_bad_arguments(kwargs):
    x = MultiSeries.variable(VARS, 4, "x")
    with pytest.raises(UsageError):
        divide_linear(x, **kwargs)


def test_nlaurent_arithmetic_and_eval():
    f = NLaurent({-1: Fraction(2), 1: Fraction(1, 3)})
    g = NLaurent({0: 1})
    assert (f * g) == f
    assert f.eval_at(Fraction(1, 2)) == 4 + Fraction(1, 6)
    assert (f - f).is_zero()


def test_nlaurent_negative_power_at_zero():
    f = NLaurent({-2: 1})
    with pytest.raises(UsageError):
        f.eval_at(0)


def test_nlaurent_json_roundtrip():
    f = NLaurent({0: Fraction(5, 7), 4: -2})
    assert NLaurent.from_json(f.to_json()) == f
