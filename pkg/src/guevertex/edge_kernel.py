"""Airy-kernel edge quantities and the Fourier-transform identity check.

The central identity evaluated here: for s > 0,

    integral dlam e^{s lam} integral_0^inf dz Ai^2(lam + z)
        = (1/(2 sqrt(pi))) s^{-3/2} e^{s^3/12}.

The double integral is absolutely convergent on the positive-s axis (the
oscillatory real-frequency version is out of scope), so nested adaptive
quadrature with controlled truncation suffices.

The inner integral has the closed form E(lam) = Ai'(lam)^2 - lam Ai(lam)^2,
which the tests use as an independent oracle; the quadrature route never
assumes it.
"""

from __future__ import annotations

import math

from scipy import integrate, special

from .errors import ToleranceError, UsageError

# Truncation bounds for the outer integral. At lam = -80 the e^{s lam}
# factor is below 5e-18 for s >= 0.5 while E(lam) grows only like
# sqrt(|lam|); at lam = +16 the Ai^2 decay e^{-(4/3) lam^{3/2}} beats
# e^{s lam} by ~e^{-53} even at s = 2.
OUTER_LOWER = -80.0
OUTER_UPPER = 16.0


def airy_fn(x: float) -> float:
    """Ai(x)."""
    return float(special.airy(x)[0])


def airy_derivative(x: float) -> float:
    """Ai'(x)."""
    return float(special.airy(x)[1])


def inner_tail_integral(lam: float) -> float:
    """E(lam) = integral_0^inf Ai^2(lam + z) dz, by adaptive quadrature.

    The upper limit is truncated where Ai^2 is ~1e-55; the oscillatory
    stretch at very negative lam needs a generous subdivision budget
    (~150 periods at lam = -80), so the limit is sized for that and the
    QUADPACK diagnostics are read from full_output instead of warnings.
    """
    upper = max(14.0, lam + 2.0)
    out = integrate.quad(
        lambda t: special.airy(t)[0] ** 2,
        lam,
        upper,
        epsabs=1e-12,
        epsrel=1e-10,
        limit=400,
        full_output=1,
    )
    return float(out[0])


def inner_tail_closed(lam: float) -> float:
    """The closed form Ai'(lam)^2 - lam Ai(lam)^2 (test oracle)."""
    ai, aip, _, _ = special.airy(lam)
    return float(aip**2 - lam * ai**2)


def edge_ft_quadrature(s: float, rel_tol: float = 1e-8) -> float:
    """The double integral at decay rate s, to rel_tol relative accuracy.

    Raises ToleranceError when the quadrature error estimate exceeds the
    requested tolerance.
    """
    if s <= 0:
        raise UsageError(f"decay rate must be positive, got {s}")
    if s > 4:
        raise UsageError(
            f"decay rate {s} too large for the fixed truncation window"
        )
    val, err = integrate.quad(
        lambda lam: math.exp(s * lam) * inner_tail_integral(lam),
        OUTER_LOWER,
        OUTER_UPPER,
        epsabs=1e-12,
        epsrel=rel_tol / 4,
        limit=400,
    )
    if not math.isfinite(val) or err > rel_tol * abs(val):
        raise ToleranceError(
            f"edge quadrature at s={s}: error estimate {err:.3e} "
            f"exceeds {rel_tol:.1e} relative on value {val:.6e}"
        )
    return float(val)


def edge_ft_target(s: float) -> float:
    """Closed form (1/(2 sqrt(pi))) s^{-3/2} e^{s^3/12}."""
    if s <= 0:
        raise UsageError(f"decay rate must be positive, got {s}")
    return 0.5 / math.sqrt(math.pi) * s**-1.5 * math.exp(s**3 / 12)
