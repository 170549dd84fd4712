"""Exact truncated power series and one-variable Laurent polynomials.

Coefficients are fractions.Fraction throughout: arbitrary precision, always
in lowest terms, positive denominator. No floats enter any arithmetic here.

MultiSeries is a multivariate power series truncated at a fixed total degree.
The cutoff is part of the value: arithmetic never extends it silently, and
asking for a coefficient beyond the cutoff is a usage error rather than a
silent zero.

NLaurent is a Laurent polynomial in a single variable (used for 1/N
expansions, where negative powers are meaningful and no truncation happens).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import InternalError, UsageError

Rational = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise UsageError(f"exact coefficient expected, got {type(x).__name__}")


def _rational_json(c: Fraction) -> dict:
    return {"num": str(c.numerator), "den": str(c.denominator)}


def _rational_from_json(d) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


class MultiSeries:
    """Truncated multivariate power series with exact coefficients.

    vars: ordered tuple of variable names.
    cutoff: maximum total degree retained (inclusive).
    terms: exponent tuple -> nonzero Fraction.
    """

    __slots__ = ("vars", "cutoff", "terms")

    def __init__(self, vars, cutoff, terms=None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise UsageError(f"duplicate variable names in {vars}")
        if cutoff < 0:
            raise UsageError(f"cutoff must be >= 0, got {cutoff}")
        self.vars = vars
        self.cutoff = int(cutoff)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vars):
                raise UsageError(f"exponent arity {len(exps)} != {len(vars)} vars")
            if any(e < 0 for e in exps):
                raise UsageError(f"negative exponent in {exps}; use NLaurent for that")
            if sum(exps) > self.cutoff:
                raise UsageError(f"term {exps} exceeds cutoff {self.cutoff}")
            c = _as_fraction(c)
            if c != 0:
                clean[exps] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars, cutoff):
        return cls(vars, cutoff, {})

    @classmethod
    def const(cls, vars, cutoff, value):
        value = _as_fraction(value)
        z = (0,) * len(tuple(vars))
        return cls(vars, cutoff, {z: value} if value else {})

    @classmethod
    def variable(cls, vars, cutoff, name, power=1):
        vars = tuple(vars)
        if name not in vars:
            raise UsageError(f"{name!r} is not one of {vars}")
        exps = tuple(power if v == name else 0 for v in vars)
        return cls(vars, cutoff, {exps: Fraction(1)})

    # -- queries -----------------------------------------------------------

    def coeff(self, exps) -> Fraction:
        """Coefficient of the given exponent tuple.

        Raises UsageError beyond the cutoff: a truncated series does not
        know those coefficients, and pretending they are zero hides bugs.
        """
        exps = tuple(int(e) for e in exps)
        if len(exps) != len(self.vars):
            raise UsageError(f"exponent arity {len(exps)} != {len(self.vars)} vars")
        if sum(exps) > self.cutoff:
            raise UsageError(
                f"coefficient {exps} is beyond cutoff {self.cutoff}; "
                f"recompute with a larger cutoff"
            )
        return self.terms.get(exps, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def min_total_degree(self):
        """Smallest total degree with a nonzero term, or None if zero."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, MultiSeries)
            and self.vars == other.vars
            and self.cutoff == other.cutoff
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, self.cutoff, frozenset(self.terms.items())))

    def __repr__(self):
        n = len(self.terms)
        return f"MultiSeries(vars={self.vars}, cutoff={self.cutoff}, {n} terms)"

    def _check_compatible(self, other):
        if not isinstance(other, MultiSeries):
            raise UsageError(f"expected MultiSeries, got {type(other).__name__}")
        if self.vars != other.vars:
            raise UsageError(f"variable mismatch: {self.vars} vs {other.vars}")
        if self.cutoff != other.cutoff:
            raise UsageError(f"cutoff mismatch: {self.cutoff} vs {other.cutoff}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiSeries.const(self.vars, self.cutoff, other)
        self._check_compatible(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, Fraction(0)) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return MultiSeries(self.vars, self.cutoff, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(
            self.vars, self.cutoff, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiSeries.const(self.vars, self.cutoff, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return MultiSeries.zero(self.vars, self.cutoff)
            return MultiSeries(
                self.vars, self.cutoff, {e: c * v for e, v in self.terms.items()}
            )
        self._check_compatible(other)
        cutoff = self.cutoff
        out = {}
        # skip products that land beyond the cutoff instead of building them
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cutoff:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiSeries(self.vars, self.cutoff, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise UsageError(f"series power must be a nonnegative int, got {k}")
        acc = MultiSeries.const(self.vars, self.cutoff, 1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    # -- structure maps ----------------------------------------------------

    def flip_sign(self, name):
        """Substitute  name -> -name  (toggles sign by exponent parity)."""
        if name not in self.vars:
            raise UsageError(f"{name!r} is not one of {self.vars}")
        i = self.vars.index(name)
        return MultiSeries(
            self.vars,
            self.cutoff,
            {e: (-c if e[i] % 2 else c) for e, c in self.terms.items()},
        )

    def truncate(self, cutoff):
        """Lower the cutoff, discarding higher-degree terms."""
        if cutoff > self.cutoff:
            raise UsageError(
                f"cannot raise cutoff {self.cutoff} -> {cutoff}; missing terms"
            )
        kept = {e: c for e, c in self.terms.items() if sum(e) <= cutoff}
        return MultiSeries(self.vars, cutoff, kept)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        """Canonical JSON form: terms sorted lexicographically by exponent."""
        items = sorted(self.terms.items())
        return {
            "vars": list(self.vars),
            "cutoff": self.cutoff,
            "terms": [
                {"exp": list(e), **_rational_json(c)} for e, c in items
            ],
        }

    @classmethod
    def from_json(cls, d) -> "MultiSeries":
        terms = {
            tuple(t["exp"]): _rational_from_json(t) for t in d["terms"]
        }
        return cls(tuple(d["vars"]), int(d["cutoff"]), terms)


def series_exp(f: MultiSeries) -> MultiSeries:
    """exp of a series with zero constant term, exact to the cutoff."""
    if f.constant_term() != 0:
        raise UsageError("series_exp needs a zero constant term")
    acc = MultiSeries.const(f.vars, f.cutoff, 1)
    power = acc
    for k in range(1, f.cutoff + 1):
        power = power * f
        if power.is_zero():
            break
        acc = acc + power * Fraction(1, factorial(k))
    return acc


def series_log(g: MultiSeries) -> MultiSeries:
    """log of a series with constant term 1, exact to the cutoff."""
    if g.constant_term() != 1:
        raise UsageError("series_log needs constant term 1")
    h = g - 1
    acc = MultiSeries.zero(g.vars, g.cutoff)
    power = MultiSeries.const(g.vars, g.cutoff, 1)
    sign = 1
    for k in range(1, g.cutoff + 1):
        power = power * h
        if power.is_zero():
            break
        acc = acc + power * Fraction(sign, k)
        sign = -sign
    return acc


def divide_linear(f: MultiSeries, a: str, b: str, sign: int = 1) -> MultiSeries:
    """Exact division of f by the linear form (a + sign*b).

    Long division ordered by the exponent of a.  The callers divide
    expressions that are divisible by construction (every monomial carries
    a factor, or an antisymmetry argument applies per homogeneous degree),
    so a nonzero remainder is reported as an InternalError, not a usage
    problem.
    """
    if sign not in (1, -1):
        raise UsageError(f"sign must be +1 or -1, got {sign}")
    if a == b:
        raise UsageError("divisor needs two distinct variables")
    if a not in f.vars or b not in f.vars:
        raise UsageError(f"{a!r}, {b!r} must both be variables of {f.vars}")
    ia = f.vars.index(a)
    ib = f.vars.index(b)
    rem = dict(f.terms)
    quot: dict = {}
    while True:
        lead = None
        for e in rem:
            if e[ia] > 0 and (lead is None or e[ia] > lead[ia]):
                lead = e
        if lead is None:
            break
        c = rem.pop(lead)
        qe = list(lead)
        qe[ia] -= 1
        quot[tuple(qe)] = quot.get(tuple(qe), Fraction(0)) + c
        te = list(qe)
        te[ib] += 1
        te = tuple(te)
        r = rem.get(te, Fraction(0)) - sign * c
        if r:
            rem[te] = r
        else:
            rem.pop(te, None)
    if rem:
        op = "+" if sign == 1 else "-"
        raise InternalError(
            f"series not divisible by ({a} {op} {b}); residual {len(rem)} terms"
        )
    return MultiSeries(f.vars, f.cutoff, quot)


class NLaurent:
    """Laurent polynomial in one variable (canonically called nu = 1/N).

    Exact arithmetic, negative exponents allowed, no truncation.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            c = _as_fraction(c)
            if c != 0:
                clean[int(e)] = c
        self.terms = clean

    @classmethod
    def const(cls, value):
        return cls({0: value})

    def coeff(self, e: int) -> Fraction:
        return self.terms.get(int(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self):
        return sorted(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NLaurent.const(other)
        return isinstance(other, NLaurent) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "NLaurent(0)"
        bits = []
        for e in self.degrees():
            c = self.terms[e]
            if e == 0:
                bits.append(f"{c}")
            elif e == 1:
                bits.append(f"{c}*nu")
            else:
                bits.append(f"{c}*nu^{e}")
        return "NLaurent(" + " + ".join(bits) + ")"

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NLaurent.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return NLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return NLaurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NLaurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return NLaurent({e: c * v for e, v in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return NLaurent(out)

    __rmul__ = __mul__

    def eval_at(self, value) -> Fraction:
        """Exact evaluation at a rational point (nonzero if negative powers)."""
        value = _as_fraction(value)
        if value == 0 and any(e < 0 for e in self.terms):
            raise UsageError("cannot evaluate negative powers at 0")
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * value**e
        return total

    def to_json(self) -> dict:
        """Same canonical shape as MultiSeries, vars=["nu"], single exps.

        The cutoff field records the maximum degree present (informational;
        a Laurent polynomial is not truncated).
        """
        items = sorted(self.terms.items())
        cutoff = max((e for e in self.terms), default=0)
        return {
            "vars": ["nu"],
            "cutoff": cutoff,
            "terms": [{"exp": [e], **_rational_json(c)} for e, c in items],
        }

    @classmethod
    def from_json(cls, d) -> "NLaurent":
        return cls({t["exp"][0]: _rational_from_json(t) for t in d["terms"]})
