import math
from fractions import Fraction

import pytest

from guevertex.errors import BudgetError, InternalError, UsageError
from guevertex.intersections import (
    IntersectionTable,
    ModuliMonomial,
    cross_route_check,
    determinant_route_check,
    f_one_point,
    kontsevich_n2_logz,
    kontsevich_n2_z,
    one_point_coefficient,
    one_point_tau,
    string_equation_check,
    two_point_table,
    z_airy_series,
)


def test_one_point_values():
    assert one_point_tau(1) == Fraction(1, 24)
    assert one_point_tau(2) == Fraction(1, 1152)
    assert one_point_tau(3) == Fraction(1, 82944)
    for g in range(7):
        assert one_point_tau(g) == Fraction(1, 24**g * math.factorial(g))


def test_one_point_series_agrees():
    series = f_one_point(4)
    for g in range(1, 5):
        assert one_point_coefficient(series, 3 * g - 2, g) == one_point_tau(g)
    # off-dimension indices carry nothing
    assert one_point_coefficient(series, 2, 1) == 0


def test_two_point_values():
    table = two_point_table(2)
    assert table.get((2, 0), 1) == Fraction(1, 24)
    assert table.get((1, 1), 1) == Fraction(1, 24)
    assert table.get((5, 0), 2) == Fraction(1, 1152)
    assert table.get((4, 1), 2) == Fraction(1, 384)
    assert table.get((3, 2), 2) == Fraction(29, 5760)
    # index order must not matter
    assert table.get((0, 5), 2) == table.get((5, 0), 2)


def test_table_validation():
    table = IntersectionTable.empty()
    table.add((1,), 1, Fraction(1, 24))
    with pytest.raises(InternalError):
        table.add((1,), 1, Fraction(1, 23))
    with pytest.raises(UsageError):
        table.add((2,), 1, Fraction(1, 2))
    with pytest.raises(UsageError):
        table.get((3, 2), 1)
    rows = table.rows()
    assert rows == [{"tau": [1], "genus": 1, "num": "1", "den": "24"}]


def test_string_equation():
    report = string_equation_check(3)
    assert report.ok
    assert report.checked >= 9
    assert report.failures == ()


def test_moduli_monomial_properties():
    cube = ModuliMonomial((3,))
    assert cube.genus == 0
    assert cube.insertions == 3
    assert cube.symmetry_factor == 6
    assert cube.label() == "s0^3"
    assert cube.tau_indices == (0, 0, 0)

    s4 = ModuliMonomial((0, 0, 0, 0, 1))
    assert s4.genus == 2
    assert s4.label() == "s4"

    assert ModuliMonomial((1, 0, 0)) == ModuliMonomial((1,))

    with pytest.raises(UsageError):
        ModuliMonomial((1,)).genus
    with pytest.raises(UsageError):
        ModuliMonomial((-1,))


def test_airy_scalar_series():
    z = z_airy_series(3)
    assert z.coeff((0,)) == 1
    assert z.coeff((1,)) == Fraction(-5, 24)
    assert z.coeff((2,)) == Fraction(385, 1152)
    assert z.coeff((3,)) == Fraction(-85085, 82944)


def test_partition_function_low_degree():
    z = kontsevich_n2_z(3)
    assert z.constant_term() == 1
    assert z.coeff((0, 3)) == Fraction(5, 24)
    assert z.coeff((1, 2)) == Fraction(1, 2)
    assert z.coeff((3, 0)) == Fraction(5, 24)


def test_logz_low_degree_coefficients():
    expansion = kontsevich_n2_logz(6)
    assert expansion.coefficient((3,)) == Fraction(1, 6)
    assert expansion.coefficient((0, 1)) == Fraction(1, 24)
    assert expansion.coefficient((3, 1)) == Fraction(1, 6)
    assert expansion.coefficient((0, 2)) == Fraction(1, 48)
    assert expansion.coefficient((1, 0, 1)) == Fraction(1, 24)
    with pytest.raises(UsageError):
        expansion.coefficient((0, 0, 2))


def test_logz_table_entries():
    table = kontsevich_n2_logz(6).table
    assert table.get((0, 0, 0), 0) == 1
    assert table.get((1,), 1) == Fraction(1, 24)
    assert table.get((2, 0), 1) == Fraction(1, 24)
    assert table.get((1, 1), 1) == Fraction(1, 24)


def test_determinant_route_matches_diagrams():
    report = determinant_route_check(8)
    assert report.ok
    assert report.mismatches == ()


def test_cross_route_agreement():
    report = cross_route_check(6)
    assert report.ok
    assert report.row((1,), 1).matrix_model == Fraction(1, 24)
    assert report.row((2, 0), 1).generating_series == Fraction(1, 24)


def test_budget_stops_oversized_expansion():
    with pytest.raises(BudgetError):
        kontsevich_n2_logz(12)


def test_bad_degree_rejected():
    with pytest.raises(UsageError):
        kontsevich_n2_logz(2)
    with pytest.raises(UsageError):
        kontsevich_n2_z(-1)
