"""Self-check registry: one callable per acceptance criterion.

Each check returns a one-line detail string on success and raises
CheckFailure (with the same kind of detail) when the criterion does not
hold.  The CLI `selftest` command and the acceptance test suite both run
exactly these functions, so a PASS line in one is a pass in the other.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from . import asymptotics, closed_forms, edge_kernel, intersections, pairings, sampling
from .errors import BudgetError, CheckFailure
from .series import NLaurent


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailure(message)


def check_01_oracle_closed_form(threads=None) -> str:
    start = time.time()
    for k in range(1, 7):
        oracle = pairings.vertex_moment([2 * k])
        formula = closed_forms.exact_one_point_moment(k).value
        _require(
            oracle == formula,
            f"k={k}: pairing oracle {oracle.terms} != closed form {formula.terms}",
        )
    elapsed = time.time() - start
    _require(elapsed < 10, f"runtime {elapsed:.1f}s exceeds the 10s bound")
    return f"oracle == closed form for k <= 6 ({elapsed:.1f}s)"


def check_02_u_series_fixtures(threads=None) -> str:
    series = closed_forms.u_series(6)
    got4 = closed_forms.u_series_coefficient(series, 4)
    got6 = closed_forms.u_series_coefficient(series, 6)
    want4 = NLaurent({0: Fraction(1, 12), 2: Fraction(1, 24)})
    want6 = NLaurent({0: Fraction(1, 144), 2: Fraction(1, 72)})
    _require(got4 == want4, f"degree-4 coefficient {got4.terms} != {want4.terms}")
    _require(got6 == want6, f"degree-6 coefficient {got6.terms} != {want6.terms}")
    return "series coefficients (1/12)(1+1/2N^2) and (1/144)(1+2/N^2) exact"


def check_03_genus_coefficients(threads=None) -> str:
    for k in (4, 5, 6):
        oracle = pairings.vertex_moment([2 * k])
        for g in (1, 2):
            got = oracle.coeff(2 * g)
            want = closed_forms.catalan(k) * closed_forms.genus_coefficient(k, g)
            _require(
                got == want,
                f"k={k}, genus {g}: oracle {got} != closed form {want}",
            )
    return "nu^2 and nu^4 genus coefficients exact for k in {4,5,6}"


def check_04_connected_fixtures(threads=None) -> str:
    start = time.time()
    got11 = pairings.connected_moment([1, 1])
    got22 = pairings.connected_moment([2, 2])
    _require(got11 == NLaurent({2: 1}), f"connected [1,1] = {got11.terms}, want nu^2")
    _require(got22 == NLaurent({2: 2}), f"connected [2,2] = {got22.terms}, want 2 nu^2")
    lists = 0
    for total in range(2, 13, 2):
        for degrees in _degree_lists(total, 3):
            moment = pairings.vertex_moment(list(degrees))
            bad = [e for e in moment.degrees() if e % 2]
            _require(not bad, f"odd nu power {bad} in vertex moment {degrees}")
            lists += 1
    elapsed = time.time() - start
    return f"fixtures exact; parity clean on {lists} degree lists ({elapsed:.1f}s)"


def _degree_lists(total: int, max_parts: int):
    """Nonincreasing part lists (each >= 1) of the given total."""

    def walk(remaining, max_part, prefix):
        if remaining == 0:
            yield tuple(prefix)
            return
        if len(prefix) == max_parts:
            return
        for part in range(min(remaining, max_part), 0, -1):
            prefix.append(part)
            yield from walk(remaining - part, part, prefix)
            prefix.pop()

    yield from walk(total, total, [])


def check_05_triple_sum_example(threads=None) -> str:
    start = time.time()
    exact_fraction = closed_forms.triple_sum_I(30, 15, 50)
    scale = (
        math.factorial(60) * math.factorial(30) * math.factorial(100)
    )
    exact = float(scale * exact_fraction)
    asympt = asymptotics.triple_sum_asymptotic(30, 15, 50)
    ratio = asympt / exact
    _require(
        abs(exact - 7.4632e55) <= 0.005e55,
        f"exact sum {exact:.5e} outside 7.4632e55 +/- 0.005e55",
    )
    _require(
        abs(asympt - 7.4864e55) <= 0.005e55,
        f"asymptotic {asympt:.5e} outside 7.4864e55 +/- 0.005e55",
    )
    _require(abs(ratio - 1.0031) <= 0.001, f"ratio {ratio:.5f} outside 1.0031 +/- 0.001")
    elapsed = time.time() - start
    _require(elapsed < 5, f"runtime {elapsed:.1f}s exceeds the 5s bound")
    return (
        f"exact {exact:.4e}, asymptotic {asympt:.4e}, "
        f"ratio {ratio:.4f} ({elapsed:.1f}s)"
    )


def check_06_one_point_intersections(threads=None) -> str:
    series = intersections.f_one_point(6)
    _require(series.constant_term() == 1, "genus-0 constant term != 1")
    for g in range(7):
        want = Fraction(1, 24**g * math.factorial(g))
        got = intersections.one_point_tau(g)
        _require(got == want, f"one_point_tau({g}) = {got} != {want}")
        if g >= 1:
            from_series = intersections.one_point_coefficient(series, 3 * g - 2, g)
            _require(
                from_series == want,
                f"series coefficient at genus {g}: {from_series} != {want}",
            )
    return "1/(24^g g!) exact for g <= 6, series and closed form"


def check_07_two_point_intersections(threads=None) -> str:
    table = intersections.two_point_table(2)
    expected = {
        ((2, 0), 1): Fraction(1, 24),
        ((1, 1), 1): Fraction(1, 24),
        ((5, 0), 2): Fraction(1, 1152),
        ((4, 1), 2): Fraction(1, 384),
        ((3, 2), 2): Fraction(29, 5760),
    }
    for (indices, g), want in expected.items():
        got = table.get(indices, g)
        _require(got == want, f"two-point {indices} genus {g}: {got} != {want}")
    report = intersections.string_equation_check(3)
    _require(
        report.ok,
        f"string equation failures: {report.failures}",
    )
    return f"five table values exact; string equation clean through genus 3 ({report.checked} coefficients)"


def check_08_kontsevich_table(threads=None) -> str:
    start = time.time()
    expansion = intersections.kontsevich_n2_logz(11, threads=threads)
    expected = {
        (3,): Fraction(1, 6),
        (0, 1): Fraction(1, 24),
        (3, 1): Fraction(1, 6),
        (0, 2): Fraction(1, 48),
        (1, 0, 1): Fraction(1, 24),
        (3, 2): Fraction(1, 6),
        (0, 3): Fraction(1, 72),
        (2, 0, 0, 1): Fraction(1, 48),
        (1, 1, 1): Fraction(1, 12),
        (0, 0, 0, 0, 1): Fraction(1, 1152),
    }
    for exps, want in expected.items():
        got = expansion.coefficient(exps)
        label = intersections.ModuliMonomial(exps).label()
        _require(got == want, f"coefficient of {label}: {got} != {want}")
    elapsed = time.time() - start
    _require(elapsed < 600, f"runtime {elapsed:.1f}s exceeds the 10min bound")
    return f"all ten monomial coefficients exact at degree 11 ({elapsed:.1f}s)"


def check_09_cross_route(threads=None) -> str:
    report = intersections.cross_route_check(6, threads=threads)
    _require(
        report.ok,
        "mismatched rows: "
        + "; ".join(
            f"{r.label}: {r.matrix_model} vs {r.generating_series}"
            for r in report.rows
            if not r.equal
        ),
    )
    for indices, g in (((1, 1), 1), ((2, 0), 1), ((1,), 1)):
        row = report.row(indices, g)
        _require(
            row.matrix_model == Fraction(1, 24),
            f"{row.label} = {row.matrix_model}, want 1/24",
        )
    return "tau_1^2, tau_0 tau_2, tau_1 all equal 1/24 across routes"


def check_10_edge_identity(threads=None) -> str:
    start = time.time()
    worst = 0.0
    for s in (0.5, 1.0, 2.0):
        value = edge_kernel.edge_ft_quadrature(s)
        target = edge_kernel.edge_ft_target(s)
        rel = abs(value - target) / target
        worst = max(worst, rel)
        _require(
            rel <= 1e-6,
            f"s={s}: quadrature {value:.9e} vs closed form {target:.9e}, rel {rel:.2e}",
        )
    elapsed = time.time() - start
    _require(elapsed < 30, f"runtime {elapsed:.1f}s exceeds the 30s bound")
    return f"identity to 1e-6 at s in {{0.5, 1, 2}} (worst rel {worst:.1e}, {elapsed:.1f}s)"


def check_11_scaling_trend(threads=None) -> str:
    rows = asymptotics.compare_scaling_ray(1.0, [27, 64, 125, 216])
    errors = [row.relative_error for row in rows]
    for a, b in zip(errors, errors[1:]):
        _require(b < a, f"relative error not decreasing: {errors}")
    pretty = ", ".join(f"N={r.N}: {r.relative_error:.4f}" for r in rows)
    return f"relative error strictly decreasing along k = N^(2/3) ({pretty})"


def check_12_semicircle_moments(threads=None) -> str:
    worst = 0.0
    for k in range(9):
        got = asymptotics.semicircle_moment(k)
        want = closed_forms.catalan(k)
        err = abs(got - want) / max(1.0, want)
        worst = max(worst, err)
        _require(err <= 1e-10, f"moment 2k={2 * k}: {got!r} vs Catalan {want}, rel {err:.2e}")
    return f"x^(2k) moments equal Catalan numbers for k <= 8 (worst rel {worst:.1e})"


def check_13_monte_carlo(threads=None) -> str:
    start = time.time()
    cfg4 = sampling.SampleConfig(n=100, samples=20_000)
    est4 = sampling.mc_vertex_estimate([4], cfg4)
    target4 = 2 + 1e-4
    dev4 = abs(est4.mean - target4) / est4.stderr
    _require(
        dev4 <= 4,
        f"V(4) estimate {est4.mean:.5f} +/- {est4.stderr:.5f} is {dev4:.1f} sigma from {target4}",
    )
    cfg22 = sampling.SampleConfig(n=50, samples=20_000)
    est22 = sampling.mc_vertex_estimate([2, 2], cfg22, connected=True)
    target22 = 2 / 2500
    dev22 = abs(est22.mean - target22) / est22.stderr
    _require(
        dev22 <= 4,
        f"connected [2,2] estimate {est22.mean:.2e} +/- {est22.stderr:.2e} "
        f"is {dev22:.1f} sigma from {target22:.2e}",
    )
    elapsed = time.time() - start
    _require(elapsed < 120, f"runtime {elapsed:.1f}s exceeds the 2min bound")
    return (
        f"V(4): {est4.mean:.5f} ({dev4:.1f} sigma); "
        f"connected [2,2]: {est22.mean:.2e} ({dev22:.1f} sigma); {elapsed:.0f}s"
    )


def check_14_three_point_identity(threads=None) -> str:
    triples = [
        (1, 1, 1), (1, 2, 3), (2, 2, 2), (5, 5, 5), (3, 7, 11),
        (10, 10, 10), (10, 20, 30), (25, 25, 50), (13, 57, 91), (40, 40, 40),
        (1, 50, 100), (2, 3, 100), (60, 70, 80), (99, 99, 99), (100, 100, 100),
        (7, 8, 9), (12, 34, 56), (20, 40, 80), (33, 66, 99), (50, 75, 100),
    ]
    worst = 0.0
    for k1, k2, k3 in triples:
        lhs = asymptotics.three_point_leading(k1, k2, k3)
        rhs = asymptotics.pairwise_merge_sum(k1, k2, k3) / 2
        rel = abs(lhs - rhs) / abs(lhs)
        worst = max(worst, rel)
        _require(
            rel <= 1e-12,
            f"triple {(k1, k2, k3)}: leading {lhs:.9e} vs merge {rhs:.9e}, rel {rel:.2e}",
        )
    return f"merge identity to 1e-12 on {len(triples)} triples (worst rel {worst:.1e})"


@dataclass(frozen=True)
class CheckSpec:
    number: int
    slug: str
    fn: object
    slow: bool


REGISTRY = (
    CheckSpec(1, "oracle-closed-form", check_01_oracle_closed_form, False),
    CheckSpec(2, "u-series-fixtures", check_02_u_series_fixtures, False),
    CheckSpec(3, "genus-coefficients", check_03_genus_coefficients, False),
    CheckSpec(4, "connected-fixtures", check_04_connected_fixtures, False),
    CheckSpec(5, "triple-sum-example", check_05_triple_sum_example, False),
    CheckSpec(6, "one-point-intersections", check_06_one_point_intersections, False),
    CheckSpec(7, "two-point-intersections", check_07_two_point_intersections, False),
    CheckSpec(8, "kontsevich-table", check_08_kontsevich_table, True),
    CheckSpec(9, "cross-route", check_09_cross_route, False),
    CheckSpec(10, "edge-identity", check_10_edge_identity, False),
    CheckSpec(11, "scaling-trend", check_11_scaling_trend, False),
    CheckSpec(12, "semicircle-moments", check_12_semicircle_moments, False),
    CheckSpec(13, "monte-carlo", check_13_monte_carlo, True),
    CheckSpec(14, "three-point-identity", check_14_three_point_identity, False),
)


@dataclass(frozen=True)
class CheckOutcome:
    number: int
    slug: str
    ok: bool
    detail: str
    seconds: float


def run_check(spec: CheckSpec, threads=None) -> CheckOutcome:
    start = time.time()
    try:
        detail = spec.fn(threads=threads)
        ok = True
    except (CheckFailure, BudgetError) as exc:
        detail = str(exc)
        ok = False
    return CheckOutcome(
        number=spec.number,
        slug=spec.slug,
        ok=ok,
        detail=detail,
        seconds=time.time() - start,
    )


def run_all(skip_slow: bool = False, threads=None, progress=None) -> list:
    outcomes = []
    for spec in REGISTRY:
        if skip_slow and spec.slow:
            continue
        outcome = run_check(spec, threads=threads)
        if progress is not None:
            progress(outcome)
        outcomes.append(outcome)
    return outcomes
