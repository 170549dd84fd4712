import math

import pytest

from guevertex.edge_kernel import (
    airy_derivative,
    airy_fn,
    edge_ft_quadrature,
    edge_ft_target,
    inner_tail_closed,
    inner_tail_integral,
)
from guevertex.errors import UsageError


def test_airy_special_values():
    assert airy_fn(0.0) == pytest.approx(3 ** (-2 / 3) / math.gamma(2 / 3), rel=1e-14)
    assert airy_derivative(0.0) == pytest.approx(
        -(3 ** (-1 / 3)) / math.gamma(1 / 3), rel=1e-14
    )


def test_airy_ode_residual():
    # Ai'' = x Ai via a symmetric difference of Ai'
    h = 1e-5
    for x in (-3.0, -1.0, 0.5, 2.0):
        second = (airy_derivative(x + h) - airy_derivative(x - h)) / (2 * h)
        assert second == pytest.approx(x * airy_fn(x), abs=1e-8)


@pytest.mark.parametrize("lam", [-2.0, 0.0, 1.0, 3.0])
def test_inner_tail_closed_form(lam):
    """Integral of Ai^2 from lam to infinity equals Ai'(lam)^2 - lam Ai(lam)^2."""
    assert inner_tail_integral(lam) == pytest.approx(inner_tail_closed(lam), rel=1e-9)


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_edge_quadrature_identity(s):
    want = edge_ft_target(s)
    assert edge_ft_quadrature(s) == pytest.approx(want, rel=1e-8)


def test_edge_target_value():
    assert edge_ft_target(1.0) == pytest.approx(
        0.5 / math.sqrt(math.pi) * math.exp(1 / 12), rel=1e-14
    )


@pytest.mark.parametrize("s", [0.0, -1.0, 5.0])
def test_edge_domain_errors(s):
    with pytest.raises(UsageError):
        edge_ft_quadrature(s)
