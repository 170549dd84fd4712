"""Large-N / large-k scaling formulas and limit shapes, as float evaluators.

Everything here is an asymptotic or limiting form of quantities the exact
modules compute for finite N: the one-point scaling function 4^k k^{-3/2}
pi^{-1/2} e^{k^3/12N^2}, its Fourier-space twin, two- and three-point
large-N forms, the bulk two-point shape, and the semicircle density.
Comparison harnesses convert exact rationals through mpmath (50+ digits)
before dividing, so trend assertions are not polluted by double rounding.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .closed_forms import exact_one_point_moment
from .errors import UsageError


@dataclass(frozen=True)
class ScalingComparison:
    """One exact-vs-asymptotic data point along a scaling ray."""

    k: int
    N: int
    exact_value: float
    asymptotic_value: float
    relative_error: float


def scaling_one_point(k: int, N: int | None = None, as_log: bool = False):
    """Asymptotic one-point moment 4^k k^{-3/2} pi^{-1/2} e^{k^3/(12 N^2)}.

    N=None drops the exponential factor (the pure Catalan asymptote).
    The value is assembled in log space; as_log=True returns (log, sign)
    instead of exp'ing, which is the overflow-safe path for large k.
    """
    if k < 1:
        raise UsageError(f"scaling form needs k >= 1, got {k}")
    log = k * math.log(4.0) - 1.5 * math.log(k) - 0.5 * math.log(math.pi)
    if N is not None:
        log += k**3 / (12.0 * N * N)
    if as_log:
        return log, 1.0
    return math.exp(log)


def subleading_one_point_factor(k: int) -> float:
    """First finite-k correction factor (1 - 21/(8k)) to the scaling form."""
    if k < 1:
        raise UsageError(f"needs k >= 1, got {k}")
    return 1.0 - 21.0 / (8.0 * k)


def edge_ft_closed(t: complex, N: int | None = None) -> complex:
    """Fourier-space edge one-point function (1/2 sqrt(pi)) (it)^{-3/2} e^{(it)^3/12N^2}.

    Principal branch of the -3/2 power. N=None means the N->infinity limit
    (no exponential factor). On the imaginary axis t=-is, s>0, the value is
    real positive: (1/2 sqrt(pi)) s^{-3/2} e^{s^3/12N^2}.
    """
    t = complex(t)
    if t == 0:
        raise UsageError("edge transform is singular at t=0")
    it = 1j * t
    val = it ** (-1.5) / (2.0 * math.sqrt(math.pi))
    if N is not None:
        val *= cmath.exp(it**3 / (12.0 * N * N))
    return val


def one_point_generating(x: float, N: int) -> float:
    """Generating-variable form of the one-point function: e^{x^3/24N^2}/x."""
    if x == 0:
        raise UsageError("generating form is singular at x=0")
    return math.exp(x**3 / (24.0 * N * N)) / x


def two_point_generating(x1: float, x2: float, N: int, l_max: int = 60) -> float:
    """Two-point generating form
    (x1+x2)^{-1} e^{(x1+x2)^3/24N^2} sum_l (-1)^l [x1 x2 (x1+x2)]^l / ((8N^2)^l (2l+1) l!).

    Setting x2=0 collapses it to one_point_generating(x1, N) exactly (the
    string-equation reduction); the tests pin that to machine precision.
    """
    s = x1 + x2
    if s == 0:
        raise UsageError("generating form is singular at x1+x2=0")
    z = x1 * x2 * s / (8.0 * N * N)
    term = 1.0
    total = 1.0
    for l in range(1, l_max + 1):
        term *= -z / l
        total += term / (2 * l + 1)
    return math.exp(s**3 / (24.0 * N * N)) * total / s


def _log_c_factorial(k1: int, k2: int) -> tuple[float, float]:
    """log|C| and sign for the exact-factorial two-point prefactor
    (2k1)!(2k2)! e^{2k1+2k2} / ((-1)^{k1+k2} sqrt(k1 k2) k1^{2k1} k2^{2k2})."""
    log = (
        math.lgamma(2 * k1 + 1)
        + math.lgamma(2 * k2 + 1)
        + 2 * (k1 + k2)
        - 0.5 * math.log(k1 * k2)
        - 2 * k1 * math.log(k1)
        - 2 * k2 * math.log(k2)
    )
    sign = -1.0 if (k1 + k2) % 2 else 1.0
    return log, sign


def two_point_asymptotic(
    k1: int, k2: int, N: int, l_max: int = 60, prefactor: str = "large_k"
) -> float:
    """Edge-scaled two-point asymptotic
    -C(k1,k2) (1/2pi) sqrt(k1 k2)/(k1+k2) e^{(k1+k2)^3/12N^2}
        * sum_{l<=l_max} [-k1 k2 (k1+k2)]^l / (l! (2l+1) (4N^2)^l).

    prefactor="large_k" uses C = 4^{2(k1+k2)}/(4 pi k1 k2); "factorial" uses
    the exact-factorial form (which alternates in sign with k1+k2). The
    overall constant differs between the stated forms of C; the l-series and
    the exponential scaling factor are the invariant content here.
    """
    if k1 < 1 or k2 < 1:
        raise UsageError("two_point_asymptotic needs k1, k2 >= 1; "
                         "the k2=0 reduction lives in two_point_generating")
    s = k1 + k2
    z = k1 * k2 * s / (4.0 * N * N)
    term = 1.0
    total = 1.0
    for l in range(1, l_max + 1):
        term *= -z / l
        total += term / (2 * l + 1)
    core_log = s**3 / (12.0 * N * N) + 0.5 * math.log(k1 * k2) - math.log(s)
    if prefactor == "large_k":
        c_log = 2 * s * math.log(4.0) - math.log(4 * math.pi * k1 * k2)
        c_sign = 1.0
    elif prefactor == "factorial":
        c_log, c_sign = _log_c_factorial(k1, k2)
    else:
        raise UsageError(f"unknown prefactor {prefactor!r}")
    value = -c_sign * math.exp(c_log + core_log) / (2.0 * math.pi)
    return value * total


def two_point_large_n(k1: int, k2: int) -> float:
    """Leading large-N connected two-point shape sqrt(k1 k2) 4^{k1+k2} / (pi (k1+k2)).

    This is N^2 <(1/N)tr M^{2k1} (1/N)tr M^{2k2}>_c at leading order.
    """
    if k1 < 1 or k2 < 1:
        raise UsageError("two_point_large_n needs k1, k2 >= 1")
    return math.sqrt(k1 * k2) * 4.0 ** (k1 + k2) / (math.pi * (k1 + k2))


def three_point_leading(k1: int, k2: int, k3: int) -> float:
    """Leading connected three-point shape
    4^K/(2 pi K) [sqrt(k3(k1+k2)) + sqrt(k1(k2+k3)) + sqrt(k2(k1+k3))], K = k1+k2+k3.

    Totally symmetric in (k1,k2,k3).
    """
    if min(k1, k2, k3) < 1:
        raise UsageError("three_point_leading needs k_i >= 1")
    big_k = k1 + k2 + k3
    s = (
        math.sqrt(k3 * (k1 + k2))
        + math.sqrt(k1 * (k2 + k3))
        + math.sqrt(k2 * (k1 + k3))
    )
    return 4.0**big_k / (2.0 * math.pi * big_k) * s


def pairwise_merge_sum(k1: int, k2: int, k3: int) -> float:
    """Sum of the three two-point large-N shapes at merged indices:
    sum_c two_point_large_n(k_c, K - k_c).

    Each merge fuses the other two vertices into one of total half-degree
    K - k_c. The sum equals exactly twice three_point_leading; the merge
    combination (half this sum) is the identity the tests assert.
    """
    if min(k1, k2, k3) < 1:
        raise UsageError("pairwise_merge_sum needs k_i >= 1")
    big_k = k1 + k2 + k3
    return sum(two_point_large_n(kc, big_k - kc) for kc in (k1, k2, k3))


def triple_sum_asymptotic(k1: int, k2: int, k3: int) -> float:
    """Large-k asymptotic of the SCALED exact triple sum
    (2k1)!(2k2)!(2k3)! * triple_sum_I(k1,k2,k3):

    4^K/(4 pi K) [sqrt(k3(k1+k2)) + sqrt(k1(k2+k3)) - sqrt(k2(k1+k3))].

    The middle argument k2 is distinguished (minus sign), matching the
    k1 <-> k3 symmetry of the exact sum.
    """
    if min(k1, k2, k3) < 1:
        raise UsageError("triple_sum_asymptotic needs k_i >= 1")
    big_k = k1 + k2 + k3
    s = (
        math.sqrt(k3 * (k1 + k2))
        + math.sqrt(k1 * (k2 + k3))
        - math.sqrt(k2 * (k1 + k3))
    )
    return 4.0**big_k / (4.0 * math.pi * big_k) * s


def bulk_two_point_r2(lambda1: float, lambda2: float) -> float:
    """Bulk connected two-level shape (N-independent factor; caller adds 1/N^2):

    -(1/(2 pi^2)) (4 - l1 l2) / ((l1-l2)^2 sqrt((4-l1^2)(4-l2^2)))

    Defined for |l_i| < 2, l1 != l2; strictly negative there.
    """
    if abs(lambda1) >= 2 or abs(lambda2) >= 2:
        raise UsageError("bulk shape needs |lambda| < 2")
    if lambda1 == lambda2:
        raise UsageError("bulk shape diverges at coinciding points")
    num = 4.0 - lambda1 * lambda2
    den = (lambda1 - lambda2) ** 2 * math.sqrt(
        (4.0 - lambda1**2) * (4.0 - lambda2**2)
    )
    return -num / (2.0 * math.pi**2 * den)


def semicircle_density(x: float) -> float:
    """Semicircle density (1/pi) sqrt(1 - (x/2)^2) on [-2,2], else 0."""
    u = 1.0 - (x / 2.0) ** 2
    if u <= 0:
        return 0.0
    return math.sqrt(u) / math.pi


def semicircle_moment(k: int, nodes: int | None = None) -> float:
    """int x^{2k} rho(x) dx by Gauss-Chebyshev (2nd kind) quadrature.

    The rule with n nodes is exact for polynomial degree <= 2n-1, so the
    default n = 2k+4 makes this exact up to rounding; the k-th Catalan
    number comes out to ~1e-15 relative.
    """
    if k < 0:
        raise UsageError(f"needs k >= 0, got {k}")
    n = nodes or (2 * k + 4)
    total = 0.0
    for i in range(1, n + 1):
        theta = i * math.pi / (n + 1)
        u = math.cos(theta)
        w = math.sin(theta) ** 2 * math.pi / (n + 1)
        total += w * (2.0 * u) ** (2 * k)
    return total * 2.0 / math.pi


def exact_one_point_float(k: int, N: int, dps: int = 50) -> float:
    """Exact moment (1/N)<tr M^{2k}> as a float via high-precision division."""
    value: Fraction = exact_one_point_moment(k, N).value
    with mpmath.workdps(dps):
        return float(mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator))


def compare_scaling_ray(c: float, n_list, dps: int = 50) -> list[ScalingComparison]:
    """Exact vs asymptotic one-point moments along the ray k = floor(c N^{2/3}).

    Division happens at dps digits (default 50) so the recorded relative
    errors are exact to double precision.
    """
    out = []
    for n in n_list:
        n = int(n)
        k = int(c * n ** (2.0 / 3.0) + 1e-9)
        if k < 1:
            raise UsageError(f"ray point N={n}, c={c} gives k < 1")
        value: Fraction = exact_one_point_moment(k, n).value
        log_asym, _ = scaling_one_point(k, n, as_log=True)
        with mpmath.workdps(dps):
            exact = mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator)
            asym = mpmath.exp(log_asym)
            rel = abs(exact - asym) / abs(exact)
            out.append(
                ScalingComparison(k, n, float(exact), float(asym), float(rel))
            )
    return out
