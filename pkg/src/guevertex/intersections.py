"""Moduli-space intersection numbers from three independent routes.

Route 1 (one-point): the closed generating series whose coefficient at
x^{3g-2}/N^{2g} is <tau_{3g-2}>_g = 1/(24^g g!).

Route 2 (two-point): the generating series
    (x1+x2)^{-1} e^{(x1+x2)^3 nu^2/24}
        * sum_l (-1)^l [x1 x2 (x1+x2) nu^2]^l / (8^l (2l+1) l!)
whose coefficient at x1^{l1} x2^{l2} nu^{2g} is <tau_{l1} tau_{l2}>_g on
l1+l2 = 3g-1.  The 1/(x1+x2) is handled by exact polynomial division;
every numerator monomial (beyond the constant) carries the factor.

Route 3 (cubic 2x2 matrix model): the weighted Wick expansion of
Z = <exp(tr M^3 / 6)> for a 2x2 Hermitian M under the tr(Lambda M^2)/2
Gaussian.  log Z, a symmetric polynomial in q_j = 1/lambda_j, is rewritten
on the basis of moduli-parameter monomials in
    s_l = (2l-1)!! (q1^{2l+1} + q2^{2l+1}),
where the coefficient of prod_l s_l^{m_l} equals
<prod tau_l^{m_l}> / prod m_l!.  The double-factorial normalization is what
makes that dictionary hold; it is pinned here by the one-variable reduction
(q2=0 collapses the model to a scalar Gaussian integral, fixing every
coefficient of q1^{3v} against (6v-1)!!).

With two q variables the monomial basis is degenerate from q-degree 9 on:
the admissible monomials (those satisfying the dimension constraint
sum(d_i) = 3g-3+n for integer g >= 0) outnumber the symmetric polynomials
of that degree.  The rewrite pins the kernel with the string equation --
the coefficient of any monomial containing tau_0 is determined by the
next-lower block -- and then cross-checks every such coefficient, so no
published value is assumed anywhere in the route.

Cross-route checks compare all overlapping entries exactly (as Fractions,
never floats).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .budget import double_factorial
from .errors import InternalError, UsageError
from .series import MultiSeries, divide_linear, series_exp, series_log
from .weighted_pairings import cubic_moment_n2_vec


# ---------------------------------------------------------------------------
# route 1: one-point
# ---------------------------------------------------------------------------


def one_point_tau(g: int) -> Fraction:
    """<tau_{3g-2}>_g = 1/(24^g g!); g=0 returns the conventional 1."""
    if g < 0:
        raise UsageError(f"genus must be >= 0, got {g}")
    return Fraction(1, 24**g * math.factorial(g))


def f_one_point(order: int) -> MultiSeries:
    """One-point generating series, genus <= order, as exp(x^3 nu^2 / 24).

    The overall x^{-2} is factored out and tracked by the accessor below:
    the stored coefficient of x^{3g} nu^{2g} is the coefficient of
    x^{3g-2} nu^{2g} in the generating function itself.
    """
    if order < 1:
        raise UsageError(f"order must be >= 1, got {order}")
    cutoff = 5 * order
    arg = MultiSeries(("x", "nu"), cutoff, {(3, 2): Fraction(1, 24)})
    return series_exp(arg)


def one_point_coefficient(series: MultiSeries, tau_index: int, g: int) -> Fraction:
    """Read <tau_{tau_index}>_g off f_one_point (shifts the x^{-2} out)."""
    if g < 0 or tau_index < 0:
        raise UsageError("tau index and genus must be >= 0")
    if tau_index != 3 * g - 2:
        return Fraction(0)
    return series.coeff((tau_index + 2, 2 * g))


# ---------------------------------------------------------------------------
# route 2: two-point
# ---------------------------------------------------------------------------


def f_two_point(order: int) -> MultiSeries:
    """Two-point generating series through genus `order`.

    Variables (x1, x2, nu); the coefficient of x1^{l1} x2^{l2} nu^{2g}
    is <tau_{l1} tau_{l2}>_g, supported on l1+l2 = 3g-1.  The genus-0
    constant of the raw product is dropped before the exact division by
    (x1+x2); everything else is divisible monomial by monomial.
    """
    if order < 1:
        raise UsageError(f"order must be >= 1, got {order}")
    cutoff = 5 * order
    vars3 = ("x1", "x2", "nu")
    x1 = MultiSeries.variable(vars3, cutoff, "x1")
    x2 = MultiSeries.variable(vars3, cutoff, "x2")
    s = x1 + x2
    exp_part = series_exp(s**3 * Fraction(1, 24) * _nu2(vars3, cutoff))
    block = x1 * x2 * s * _nu2(vars3, cutoff)
    total = MultiSeries.zero(vars3, cutoff)
    for el in range(order + 1):
        coeff = Fraction((-1) ** el, 8**el * (2 * el + 1) * math.factorial(el))
        total = total + block**el * coeff
    numerator = exp_part * total - 1
    return divide_linear(numerator, "x1", "x2")


def _nu2(vars3, cutoff) -> MultiSeries:
    exps = tuple(2 if v == "nu" else 0 for v in vars3)
    return MultiSeries(vars3, cutoff, {exps: Fraction(1)})


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

# The lone dimension-exempt entry: <tau_0 tau_0>_0 = 1 is a normalization
# convention, not a stable correlator (it violates sum d_i = 3g-3+n).
_CONVENTION_ENTRY = ((0, 0), 0)


@dataclass
class IntersectionTable:
    """Map (sorted tau-index tuple, genus) -> positive Fraction."""

    entries: dict

    @staticmethod
    def empty() -> "IntersectionTable":
        return IntersectionTable(entries={})

    def add(self, indices, g: int, value) -> None:
        key = (tuple(sorted(indices, reverse=True)), int(g))
        value = Fraction(value)
        if key != _CONVENTION_ENTRY:
            n = len(key[0])
            if g < 0 or any(d < 0 for d in key[0]):
                raise UsageError(f"negative index in {key}")
            if sum(key[0]) != 3 * g - 3 + n:
                raise UsageError(
                    f"dimension constraint fails for {key}: "
                    f"sum d_i = {sum(key[0])} != 3g-3+n = {3 * g - 3 + n}"
                )
        if value <= 0:
            raise InternalError(f"non-positive intersection number at {key}")
        old = self.entries.get(key)
        if old is not None and old != value:
            raise InternalError(f"conflicting values for {key}: {old} vs {value}")
        self.entries[key] = value

    def get(self, indices, g: int) -> Fraction:
        key = (tuple(sorted(indices, reverse=True)), int(g))
        if key not in self.entries:
            raise UsageError(f"no table entry for {key}")
        return self.entries[key]

    def has(self, indices, g: int) -> bool:
        return (tuple(sorted(indices, reverse=True)), int(g)) in self.entries

    def rows(self) -> list:
        """JSON-ready rows, sorted by (genus, indices)."""
        out = []
        for (indices, g), val in sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            out.append(
                {
                    "tau": list(indices),
                    "genus": g,
                    "num": str(val.numerator),
                    "den": str(val.denominator),
                }
            )
        return out


def two_point_table(g_max: int) -> IntersectionTable:
    """All <tau_{l1} tau_{l2}>_g for g <= g_max, plus the (0,0|0)=1 convention."""
    if g_max < 1:
        raise UsageError(f"g_max must be >= 1, got {g_max}")
    series = f_two_point(g_max)
    table = IntersectionTable.empty()
    table.add((0, 0), 0, Fraction(1))
    for g in range(1, g_max + 1):
        total = 3 * g - 1
        for l1 in range(total + 1):
            l2 = total - l1
            if l1 < l2:
                continue
            c = series.coeff((l1, l2, 2 * g))
            if l1 != l2 and c != series.coeff((l2, l1, 2 * g)):
                raise InternalError(f"asymmetric two-point coefficient at ({l1},{l2})")
            table.add((l1, l2), g, c)
    return table


@dataclass(frozen=True)
class StringCheckReport:
    ok: bool
    checked: int
    failures: tuple


def string_equation_check(g_max: int) -> StringCheckReport:
    """Verify the x2=0 reduction of the two-point series against route 1.

    Coefficient by coefficient: the x2=0 slice must be x1 times the
    one-point series, i.e. <tau_{3g-1} tau_0>_g = <tau_{3g-2}>_g and zero
    at every other x1 power.
    """
    if g_max < 1:
        raise UsageError(f"g_max must be >= 1, got {g_max}")
    series = f_two_point(g_max)
    failures = []
    checked = 0
    for g in range(1, g_max + 1):
        for m in range(3 * g + 1):
            if m + 2 * g > series.cutoff:
                continue
            got = series.coeff((m, 0, 2 * g))
            expected = one_point_tau(g) if m == 3 * g - 1 else Fraction(0)
            checked += 1
            if got != expected:
                failures.append((g, m, got, expected))
    return StringCheckReport(ok=not failures, checked=checked, failures=tuple(failures))


# ---------------------------------------------------------------------------
# route 3: cubic 2x2 matrix model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuliMonomial:
    """Monomial in the moduli parameters: exps[l] = power of s_l.

    s_l = (2l-1)!! (q1^{2l+1} + q2^{2l+1}); trailing zero exponents are
    normalized away so equal monomials compare equal.
    """

    exps: tuple

    def __init__(self, exps):
        exps = tuple(int(e) for e in exps)
        if any(e < 0 for e in exps):
            raise UsageError(f"negative exponent in {exps}")
        while exps and exps[-1] == 0:
            exps = exps[:-1]
        object.__setattr__(self, "exps", exps)

    @property
    def degree(self) -> int:
        """Total inverse-eigenvalue degree sum (2l+1) m_l."""
        return sum((2 * l + 1) * m for l, m in enumerate(self.exps))

    @property
    def insertions(self) -> int:
        return sum(self.exps)

    @property
    def tau_indices(self) -> tuple:
        out = []
        for l, m in enumerate(self.exps):
            out.extend([l] * m)
        return tuple(sorted(out, reverse=True))

    @property
    def genus(self) -> int:
        """Genus from sum d_i = 3g-3+n; UsageError when not integral."""
        s = sum(l * m for l, m in enumerate(self.exps))
        n = self.insertions
        g3 = s - n + 3
        if g3 % 3 or g3 < 0:
            raise UsageError(f"monomial {self.exps} has no integer genus")
        return g3 // 3

    @property
    def symmetry_factor(self) -> int:
        return math.prod(math.factorial(m) for m in self.exps)

    def label(self) -> str:
        parts = []
        for l, m in enumerate(self.exps):
            if m == 1:
                parts.append(f"s{l}")
            elif m > 1:
                parts.append(f"s{l}^{m}")
        return " ".join(parts) if parts else "1"


def _admissible_monomials(degree: int) -> list:
    """ModuliMonomials of the given q-degree with integer genus >= 0."""
    found = []

    def descend(remaining, max_l, exps):
        if remaining == 0:
            mono = ModuliMonomial(tuple(exps))
            s = sum(l * m for l, m in enumerate(exps))
            n = sum(exps)
            if (s - n + 3) % 3 == 0 and s - n + 3 >= 0:
                found.append(mono)
            return
        for l in range(min(max_l, (remaining - 1) // 2), -1, -1):
            part = 2 * l + 1
            if part > remaining:
                continue
            while len(exps) <= l:
                exps.append(0)
            exps[l] += 1
            descend(remaining - part, l, exps)
            exps[l] -= 1

    descend(degree, (degree - 1) // 2, [])
    return sorted(found, key=lambda m: (m.genus, m.tau_indices))


def _monomial_qvec(mono: ModuliMonomial, degree: int) -> list:
    """Homogeneous coefficient vector of q1^i q2^{degree-i} for the monomial."""
    vec = [Fraction(1)]
    for l, m in enumerate(mono.exps):
        d = 2 * l + 1
        scale = Fraction(double_factorial(2 * l - 1)) if l >= 1 else Fraction(1)
        base = [Fraction(0)] * (d + 1)
        base[0] = scale
        base[d] = scale
        for _ in range(m):
            vec = _hpoly_mul(vec, base)
    if len(vec) != degree + 1:
        raise InternalError(f"monomial degree mismatch: {mono.exps} vs {degree}")
    return vec


def _hpoly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _solve_exact(columns: list, target: list):
    """Exact Gaussian elimination; returns (particular, kernel_basis).

    Raises InternalError when the system is inconsistent.
    """
    ncol = len(columns)
    nrow = len(target)
    aug = [[columns[c][r] for c in range(ncol)] + [target[r]] for r in range(nrow)]
    pivot_of = {}
    row = 0
    for col in range(ncol):
        piv = next((i for i in range(row, nrow) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for i in range(nrow):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        pivot_of[col] = row
        row += 1
    for i in range(row, nrow):
        if aug[i][ncol] != 0:
            raise InternalError("basis rewrite: inconsistent linear system")
    particular = [Fraction(0)] * ncol
    for col, r in pivot_of.items():
        particular[col] = aug[r][ncol]
    kernel = []
    for free in (c for c in range(ncol) if c not in pivot_of):
        v = [Fraction(0)] * ncol
        v[free] = Fraction(1)
        for col, r in pivot_of.items():
            v[col] = -aug[r][free]
        kernel.append(v)
    return particular, kernel


def kontsevich_n2_z(max_inverse_degree: int, threads: int | None = None) -> MultiSeries:
    """Partition function of the 2x2 cubic model as a series in (q1, q2).

    Z = sum_v <(tr M^3)^v> / (6^v v!) over even vertex counts v = 2j with
    3j <= max_inverse_degree (odd moments vanish).  Degree 12 needs the
    v = 8 enumeration, which exceeds the default pairing budget.
    """
    if max_inverse_degree < 0:
        raise UsageError(f"max_inverse_degree must be >= 0, got {max_inverse_degree}")
    cutoff = max_inverse_degree
    terms = {(0, 0): Fraction(1)}
    j = 1
    while 3 * j <= max_inverse_degree:
        v = 2 * j
        vec = cubic_moment_n2_vec(v, threads=threads)
        scale = Fraction(1, 36**j * math.factorial(2 * j))
        for i, c in enumerate(vec):
            if c:
                terms[(i, 3 * j - i)] = Fraction(c) * scale
        j += 1
    return MultiSeries(("q1", "q2"), cutoff, terms)


@dataclass(frozen=True)
class KontsevichExpansion:
    """log Z on the moduli-monomial basis, plus the derived correlators."""

    coefficients: tuple  # ((ModuliMonomial, Fraction), ...), degree-ascending
    table: IntersectionTable

    def coefficient(self, exps) -> Fraction:
        mono = ModuliMonomial(tuple(exps))
        for m, c in self.coefficients:
            if m == mono:
                return c
        raise UsageError(f"no monomial {mono.label()} in the expansion")


def kontsevich_n2_logz(
    max_inverse_degree: int, threads: int | None = None
) -> KontsevichExpansion:
    """Rewrite log Z of the 2x2 cubic model on the moduli-monomial basis.

    Per homogeneous q-degree the admissible monomials are fitted exactly.
    From degree 9 on they are linearly dependent at two eigenvalues; the
    string equation supplies the missing constraints (each monomial with a
    tau_0 insertion is pinned from the previous block) and every such
    constraint is enforced, so an inconsistent block cannot pass silently.
    """
    if max_inverse_degree < 3:
        raise UsageError(f"max_inverse_degree must be >= 3, got {max_inverse_degree}")
    logz = series_log(kontsevich_n2_z(max_inverse_degree, threads=threads))
    table = IntersectionTable.empty()
    coefficients = []
    degree = 3
    while degree <= max_inverse_degree:
        target = [logz.coeff((i, degree - i)) for i in range(degree + 1)]
        monos = _admissible_monomials(degree)
        if not monos:
            raise InternalError(f"no admissible monomials at degree {degree}")
        columns = [_monomial_qvec(m, degree) for m in monos]
        pins = _string_pins(monos, table)
        for idx, value in pins:
            row = [Fraction(0)] * len(monos)
            row[idx] = Fraction(1)
            for c, col in enumerate(columns):
                col.append(row[c])
            target.append(value)
        particular, kernel = _solve_exact(columns, target)
        if kernel:
            raise InternalError(
                f"degree-{degree} rewrite still has a {len(kernel)}-dim kernel "
                f"after string pinning"
            )
        for mono, coeff in zip(monos, particular):
            if coeff == 0:
                continue
            coefficients.append((mono, coeff))
            table.add(mono.tau_indices, mono.genus, coeff * mono.symmetry_factor)
        degree += 3
    return KontsevichExpansion(coefficients=tuple(coefficients), table=table)


def _string_pins(monos: list, table: IntersectionTable) -> list:
    """String-equation constraints for monomials with a tau_0 insertion.

    For <tau_0 prod tau_{d_i}> the equation gives sum_j <... tau_{d_j - 1} ...>,
    whose entries live one block lower and are already in the table.  Skips
    the unstable case (the reduced correlator would have 2g-2+n < 1) and any
    monomial whose reduced entries are not all available.
    """
    pins = []
    for idx, mono in enumerate(monos):
        if not mono.exps or mono.exps[0] < 1:
            continue
        g = mono.genus
        rest = list(mono.tau_indices)
        rest.remove(0)
        if 2 * g - 2 + len(rest) < 1:
            continue
        total = Fraction(0)
        complete = True
        for j, d in enumerate(rest):
            if d == 0:
                continue
            reduced = rest[:j] + [d - 1] + rest[j + 1 :]
            if not table.has(reduced, g):
                complete = False
                break
            total += table.get(reduced, g)
        if complete:
            pins.append((idx, total / mono.symmetry_factor))
    return pins


# ---------------------------------------------------------------------------
# scalar reference series and the determinant-form assembly
# ---------------------------------------------------------------------------


def z_airy_series(order: int) -> MultiSeries:
    """Scalar cubic-deformed Gaussian ratio as a series in w = lambda^{-3}.

    z = sum_m (-1)^m (6m-1)!! / (36^m (2m)!) w^m, derived by expanding
    exp(i x^3/6) under the unit Gaussian: the m-th term is
    (i/6)^{2m}/(2m)! <x^{6m}> with <x^{6m}> = (6m-1)!!.
    """
    if order < 0:
        raise UsageError(f"order must be >= 0, got {order}")
    terms = {}
    for m in range(order + 1):
        moment = double_factorial(6 * m - 1)
        terms[(m,)] = Fraction((-1) ** m * moment, 36**m * math.factorial(2 * m))
    return MultiSeries(("w",), order, terms)


def _z_pair(cutoff: int):
    """z(q1), z(q2) and the lambda-derivatives, as (q1, q2) series.

    dz/dlambda = -sum_m 3m c_m q^{3m+1} since dq/dlambda = -q^2.
    """
    order = cutoff // 3
    coeffs = z_airy_series(order)
    vars2 = ("q1", "q2")
    z1t, z2t, zp1t, zp2t = {}, {}, {}, {}
    for m in range(order + 1):
        c = coeffs.coeff((m,))
        z1t[(3 * m, 0)] = c
        z2t[(0, 3 * m)] = c
        if m and 3 * m + 1 <= cutoff:
            zp1t[(3 * m + 1, 0)] = -3 * m * c
            zp2t[(0, 3 * m + 1)] = -3 * m * c
    return tuple(MultiSeries(vars2, cutoff, t) for t in (z1t, z2t, zp1t, zp2t))


def determinant_route_z(max_inverse_degree: int) -> MultiSeries:
    """Partition function assembled from the scalar series (no diagrams).

    Z = -( z1 z2 [q1 q2 (q1+q2)/2 - 1]
           + q1 q2 (z1' z2 q1 - z1 z2' q2) / (q2 - q1) ),
    with the antisymmetric numerator divided out exactly.  Composing at
    (-q1, -q2) must reproduce the diagrammatic route; see
    determinant_route_check.
    """
    if max_inverse_degree < 0:
        raise UsageError(f"max_inverse_degree must be >= 0, got {max_inverse_degree}")
    cutoff = max_inverse_degree + 1
    z1, z2, zp1, zp2 = _z_pair(cutoff)
    vars2 = ("q1", "q2")
    q1 = MultiSeries.variable(vars2, cutoff, "q1")
    q2 = MultiSeries.variable(vars2, cutoff, "q2")
    bracket = q1 * q2 * (q1 + q2) * Fraction(1, 2) - 1
    first = z1 * z2 * bracket
    numerator = zp1 * z2 * q1 - z1 * zp2 * q2
    second = q1 * q2 * divide_linear(numerator, "q2", "q1", sign=-1)
    return (-(first + second)).truncate(max_inverse_degree)


@dataclass(frozen=True)
class RouteCompareReport:
    ok: bool
    max_degree: int
    mismatches: tuple  # exponent tuples where the two routes differ


def determinant_route_check(
    max_inverse_degree: int = 11, threads: int | None = None
) -> RouteCompareReport:
    """Compare the diagrammatic Z against the determinant-form assembly.

    The scalar series alternates in sign, so the assembly is evaluated at
    (-q1, -q2) before comparison.  Advisory but expected to hold exactly.
    """
    diag = kontsevich_n2_z(max_inverse_degree, threads=threads)
    det = determinant_route_z(max_inverse_degree).flip_sign("q1").flip_sign("q2")
    mismatches = tuple(
        sorted(
            e
            for e in set(diag.terms) | set(det.terms)
            if diag.terms.get(e, Fraction(0)) != det.terms.get(e, Fraction(0))
        )
    )
    return RouteCompareReport(
        ok=not mismatches, max_degree=max_inverse_degree, mismatches=mismatches
    )


# ---------------------------------------------------------------------------
# cross-route comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossRouteRow:
    label: str
    indices: tuple
    genus: int
    matrix_model: Fraction
    generating_series: Fraction

    @property
    def equal(self) -> bool:
        return self.matrix_model == self.generating_series


@dataclass(frozen=True)
class CrossRouteReport:
    ok: bool
    rows: tuple

    def row(self, indices, g: int) -> CrossRouteRow:
        key = tuple(sorted(indices, reverse=True))
        for r in self.rows:
            if r.indices == key and r.genus == g:
                return r
        raise UsageError(f"no comparison row for {key} at genus {g}")


def cross_route_check(
    max_inverse_degree: int = 6, threads: int | None = None
) -> CrossRouteReport:
    """Compare every 1- and 2-insertion matrix-model entry with routes 1/2.

    max_inverse_degree 6 covers <tau_1>, <tau_0 tau_2> and <tau_1^2>;
    degree 9 adds the genus-2 one-point <tau_4>.
    """
    expansion = kontsevich_n2_logz(max_inverse_degree, threads=threads)
    g_needed = max(
        (mono.genus for mono, _ in expansion.coefficients if mono.insertions == 2),
        default=1,
    )
    pair_table = two_point_table(g_needed)
    rows = []
    for mono, _ in expansion.coefficients:
        n = mono.insertions
        if n > 2:
            continue
        indices = mono.tau_indices
        g = mono.genus
        model_value = expansion.table.get(indices, g)
        if n == 1:
            other = one_point_tau(g)
            label = f"<tau_{indices[0]}> (genus {g})"
        else:
            other = pair_table.get(indices, g)
            label = f"<tau_{indices[0]} tau_{indices[1]}> (genus {g})"
        rows.append(
            CrossRouteRow(
                label=label,
                indices=indices,
                genus=g,
                matrix_model=model_value,
                generating_series=other,
            )
        )
    if not rows:
        raise InternalError("no overlapping entries to compare")
    return CrossRouteReport(ok=all(r.equal for r in rows), rows=tuple(rows))
