"""Exact finite-N closed forms for one-point moments and related series.

The normalized one-point moment (1/N)<tr M^{2k}> of the Gaussian Hermitian
ensemble is a polynomial in nu = 1/N with a known hypergeometric-style sum:

    (1/N)<tr M^{2k}> = (2k)!/N^k * sum_{l=0}^{k}
        (N-1)(N-2)...(N-k+l) / ((k-l)! (k-l+1)! l! 2^l)

The falling factorial is expanded as a polynomial in N, so the formula is
valid verbatim for all N >= 1 (small N included). The genus expansion, the
Catalan large-N limit, the Bessel kernel limit of U(t), and the exact triple
sum behind connected three-point coefficients live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import UsageError
from .series import MultiSeries, NLaurent


@dataclass(frozen=True)
class MomentFormulaResult:
    """Value of (1/N)<tr M^{2k}>, symbolic (NLaurent in nu) or numeric."""

    value: object
    k: int
    N: int | None


def catalan(k: int) -> int:
    """k-th Catalan number (2k)!/(k!(k+1)!)."""
    if k < 0:
        raise UsageError(f"catalan needs k >= 0, got {k}")
    return comb(2 * k, k) // (k + 1)


def _one_point_numerator(k: int) -> dict[int, Fraction]:
    """Polynomial P(N) with (1/N)<tr M^{2k}> = P(N)/N^k, as degree->coeff."""
    total: dict[int, Fraction] = {}
    for l in range(k + 1):
        c = Fraction(
            factorial(2 * k),
            factorial(k - l) * factorial(k - l + 1) * factorial(l) * 2**l,
        )
        # falling factorial (N-1)(N-2)...(N-(k-l)) as a polynomial in N
        poly = {0: Fraction(1)}
        for j in range(1, k - l + 1):
            nxt: dict[int, Fraction] = {}
            for d, a in poly.items():
                nxt[d + 1] = nxt.get(d + 1, Fraction(0)) + a
                nxt[d] = nxt.get(d, Fraction(0)) - a * j
            poly = nxt
        for d, a in poly.items():
            s = total.get(d, Fraction(0)) + c * a
            if s:
                total[d] = s
            else:
                total.pop(d, None)
    return total


def exact_one_point_moment(k: int, N: int | None = None) -> MomentFormulaResult:
    """(1/N)<tr M^{2k}>: NLaurent in nu when N is None, else exact Rational."""
    if k < 0:
        raise UsageError(f"moment half-degree must be >= 0, got {k}")
    poly = _one_point_numerator(k)
    symbolic = NLaurent({k - d: c for d, c in poly.items()})
    if N is None:
        return MomentFormulaResult(symbolic, k, None)
    if N < 1:
        raise UsageError(f"N must be a positive integer, got {N}")
    return MomentFormulaResult(symbolic.eval_at(Fraction(1, N)), k, N)


def u_series(order: int) -> MultiSeries:
    """U(t) = <(1/N) tr e^{itM}> as a series in (it, nu), through (it)^order.

    Coefficient of (it)^{2k} nu^{2g} is the genus-g part of the exact moment
    divided by (2k)!. Odd powers of (it) vanish identically. The total-degree
    cutoff is order + order//2, which covers every nu power that can occur
    next to (it)^{<=order}.
    """
    if order < 0 or order % 2:
        raise UsageError(f"order must be even and >= 0, got {order}")
    cutoff = order + order // 2
    terms: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
    for k in range(1, order // 2 + 1):
        moment = exact_one_point_moment(k).value
        inv = Fraction(1, factorial(2 * k))
        for e, c in moment.terms.items():
            terms[(2 * k, e)] = c * inv
    return MultiSeries(("it", "nu"), cutoff, terms)


def u_series_coefficient(series: MultiSeries, power: int) -> NLaurent:
    """Collect the full nu-polynomial multiplying (it)^power."""
    out = {}
    for (p, e), c in series.terms.items():
        if p == power:
            out[e] = c
    return NLaurent(out)


def genus_coefficient(k: int, g: int) -> Fraction:
    """Genus-g term of (1/N)<tr M^{2k}> relative to the Catalan prefactor.

    The moment expands as Catalan(k) * [1 + e_1(k) nu^2 + e_2(k) nu^4 + ...];
    this returns e_g(k). Closed forms are known for g <= 2.
    """
    if k < 0:
        raise UsageError(f"k must be >= 0, got {k}")
    if g == 0:
        return Fraction(1)
    if g == 1:
        return Fraction(k * (k - 1) * (k + 1), 12)
    if g == 2:
        return Fraction(k * (k + 1) * (k - 1) * (k - 2) * (k - 3) * (5 * k - 2), 1440)
    raise UsageError(f"no closed form wired for genus {g} (have g <= 2)")


def bessel_u_coefficient(k: int) -> Fraction:
    """Exact t^{2k} coefficient of J_1(2t)/t: (-1)^k Catalan(k)/(2k)!."""
    return Fraction((-1) ** k * catalan(k), factorial(2 * k))


def bessel_u_limit(t: float, terms: int = 60) -> float:
    """Large-N limit U(t) = J_1(2t)/t, by its power series.

    The series is entire; `terms` only needs to beat |t| (term ratio is
    t^2/(m(m+1)), so ~2|t| + 20 terms is plenty for double precision).
    """
    term = 1.0
    total = 1.0
    for m in range(1, terms + 1):
        term *= -(t * t) / (m * (m + 1))
        total += term
    return total


def triple_sum_I(k1: int, k2: int, k3: int) -> Fraction:
    """Exact triple sum behind the connected three-point coefficient.

    I = sum over l1,l2,l3 >= 0 of
        1 / [ (k1-l1-l3-1)! (k1+l1+l3+1)! (k2-l1+l2)! (k2+l1-l2)!
              (k3-l2-l3-1)! (k3+l2+l3+1)! ]
    with any term containing a negative factorial argument omitted.
    The middle argument k2 plays a distinguished role; the sum is symmetric
    under k1 <-> k3 (relabel l1 <-> l2).
    """
    if min(k1, k2, k3) < 0:
        raise UsageError("triple_sum_I needs nonnegative integers")
    total = Fraction(0)
    for l3 in range(0, min(k1, k3)):
        for l1 in range(0, k1 - l3):
            lo = max(0, l1 - k2)
            hi = min(k3 - 1 - l3, l1 + k2)
            for l2 in range(lo, hi + 1):
                total += Fraction(
                    1,
                    factorial(k1 - l1 - l3 - 1)
                    * factorial(k1 + l1 + l3 + 1)
                    * factorial(k2 - l1 + l2)
                    * factorial(k2 + l1 - l2)
                    * factorial(k3 - l2 - l3 - 1)
                    * factorial(k3 + l2 + l3 + 1),
                )
    return total


def triple_sum_scaled(k1: int, k2: int, k3: int) -> int:
    """(2k1)!(2k2)!(2k3)! * triple_sum_I, as an exact integer.

    Each term collapses to a product of three binomials, so the scaled sum
    is manifestly a nonnegative integer:
        C(2k1, k1-l1-l3-1) C(2k2, k2-l1+l2) C(2k3, k3-l2-l3-1).
    """
    if min(k1, k2, k3) < 0:
        raise UsageError("triple_sum_scaled needs nonnegative integers")
    total = 0
    for l3 in range(0, min(k1, k3)):
        for l1 in range(0, k1 - l3):
            lo = max(0, l1 - k2)
            hi = min(k3 - 1 - l3, l1 + k2)
            for l2 in range(lo, hi + 1):
                total += (
                    comb(2 * k1, k1 - l1 - l3 - 1)
                    * comb(2 * k2, k2 - l1 + l2)
                    * comb(2 * k3, k3 - l2 - l3 - 1)
                )
    return total
