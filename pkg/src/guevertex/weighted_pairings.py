"""Wick pairings weighted by an eigenvalue-dependent quadratic form.

For a Hermitian Gaussian measure with weight exp(-1/2 tr(Lambda M^2)),
Lambda = diag(lambda_1..lambda_m), the propagator is

    <M_ij M_kl> = delta_il delta_jk * 2/(lambda_i + lambda_j),

so a pairing's value depends on which eigenvalue index runs around each face
of the glued diagram. In the variables q_i = 1/lambda_i the edge weights are
q_i on the diagonal and 2 q_i q_j/(q_i+q_j) for mixed faces: exact rational
functions, not power series (2 q_i q_j/(q_i+q_j) has no joint Taylor
expansion at q=0). All arithmetic here therefore works with integer
polynomial numerators over (q_i+q_j)-power denominators, cleared and divided
out exactly at the end; whenever the full moment is a genuine polynomial
(the cubic-vertex moments below always are), the division leaves zero
remainder, and a nonzero remainder on the generic path means the requested
moment simply is not polynomial and is reported as such.

The m=2 cubic-vertex moments <(tr M^3)^v> feed the Airy-type matrix model
route to intersection numbers, including the heavy v=6 case (17!! pairings,
reduced by symmetry to 2 * 15!! traced completions).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product
from math import comb

import numpy as np

from .budget import check_budget, pairing_budget, pairing_count
from .errors import BudgetError, InternalError, UsageError
from .pairings import enumerate_pair_partitions, face_map
from .series import MultiSeries


class WeightedPropagator:
    """Propagator of the diag(lambda) Gaussian in q = 1/lambda variables.

    weight(i, j) is 2 q_i q_j/(q_i + q_j) for i != j and q_i on the diagonal
    (the i=j limit of the same expression). Represented exactly as
    (numerator polynomial, denominator pair-power): see weight_parts.
    """

    def __init__(self, index_count: int):
        if not 1 <= index_count <= 4:
            raise UsageError(f"index_count must be in 1..4, got {index_count}")
        self.index_count = index_count

    def weight_parts(self, i: int, j: int):
        """Return (numerator exponent dict, denominator pair or None).

        The numerator dict maps q-exponent tuples to integer coefficients;
        the denominator is the unordered pair (i,j) meaning one power of
        (q_i + q_j), or None for diagonal weights.
        """
        m = self.index_count
        if not (0 <= i < m and 0 <= j < m):
            raise UsageError(f"index out of range: ({i},{j}) with m={m}")
        if i == j:
            e = tuple(1 if a == i else 0 for a in range(m))
            return {e: 1}, None
        e = tuple(1 if a in (i, j) else 0 for a in range(m))
        return {e: 2}, (min(i, j), max(i, j))


# ---------------------------------------------------------------------------
# small integer-coefficient polynomial helpers (dict exponent-tuple -> int)


def _poly_add_into(acc, other, scale=1):
    for e, c in other.items():
        s = acc.get(e, 0) + c * scale
        if s:
            acc[e] = s
        else:
            acc.pop(e, None)


def _poly_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _pair_sum_power(i, j, n, nvars):
    """(q_i + q_j)^n as an exponent dict."""
    out = {}
    for t in range(n + 1):
        e = [0] * nvars
        e[i] = t
        e[j] = n - t
        out[tuple(e)] = comb(n, t)
    return out


def _div_pair_sum(poly, i, j):
    """Exact division of an integer polynomial by (q_i + q_j).

    Treats the polynomial as univariate in q_i with polynomial coefficients:
    descending Horner with substitution q_i -> -q_j. Returns (quotient,
    remainder) where the remainder is free of q_i.
    """
    if not poly:
        return {}, {}
    by_a: dict[int, dict] = {}
    for e, c in poly.items():
        a = e[i]
        rest = tuple(x if k != i else 0 for k, x in enumerate(e))
        by_a.setdefault(a, {})[rest] = c
    deg = max(by_a)
    quot_by_a: dict[int, dict] = {}
    carry: dict = {}
    for a in range(deg, 0, -1):
        cur = dict(by_a.get(a, {}))
        _poly_add_into(cur, carry, -1)
        # quotient coefficient at q_i^(a-1) is cur; carry = q_j * cur
        quot_by_a[a - 1] = cur
        carry = {}
        for e, c in cur.items():
            e2 = list(e)
            e2[j] += 1
            carry[tuple(e2)] = c
    rem = dict(by_a.get(0, {}))
    _poly_add_into(rem, carry, -1)
    quot = {}
    for a, part in quot_by_a.items():
        for e, c in part.items():
            e2 = list(e)
            e2[i] += a
            quot[tuple(e2)] = c
    return quot, rem


def weighted_moment(degrees, index_count: int, coupling=None) -> MultiSeries:
    """<prod_v tr M^{k_v}> under the diag(lambda) Gaussian, exactly.

    Sums over pairings and over assignments of one of `index_count`
    eigenvalue indices to each face, multiplying edge weights from
    WeightedPropagator. `coupling` (a Fraction) scales the result.

    Returns the moment as a MultiSeries in q_1..q_m when it is a polynomial
    (every cubic-vertex moment is). Raises UsageError when the requested
    moment has a genuine (q_i+q_j) pole, e.g. <tr M^2> at index_count >= 2.

    This is the slow generic validation path: practical up to K = sum k
    around 12 with index_count 2.
    """
    degrees = [int(d) for d in degrees]
    if any(d < 0 for d in degrees):
        raise UsageError(f"degrees must be >= 0: {degrees}")
    prop = WeightedPropagator(index_count)
    m = index_count
    total = sum(degrees)
    if total % 2:
        return MultiSeries.zero(tuple(f"q{i+1}" for i in range(m)), 0)
    edges_n = total // 2
    check_budget(total, "weighted moment")

    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    # accumulate numerators over the common denominator prod (q_i+q_j)^E
    num: dict[tuple, int] = {}
    budget = pairing_budget()
    cost = 0
    for mate in enumerate_pair_partitions(total, skip_budget=True):
        face_of, faces = face_map(degrees, mate)
        edge_faces = [
            (face_of[l], face_of[mate[l]]) for l in range(total) if l < mate[l]
        ]
        cost += m**faces
        if cost > budget:
            raise BudgetError(
                f"weighted moment: pairing x assignment cost exceeds {budget}"
            )
        for sigma in product(range(m), repeat=faces):
            n_diag = [0] * m
            n_pair = {p: 0 for p in pairs}
            for fa, fb in edge_faces:
                ia, ib = sigma[fa], sigma[fb]
                if ia == ib:
                    n_diag[ia] += 1
                else:
                    n_pair[(min(ia, ib), max(ia, ib))] += 1
            base_e = [0] * m
            coeff = 1
            for i in range(m):
                base_e[i] += n_diag[i]
            for (i, j), cnt in n_pair.items():
                base_e[i] += cnt
                base_e[j] += cnt
                coeff <<= cnt  # factor 2 per mixed edge
            term = {tuple(base_e): coeff}
            for (i, j) in pairs:
                term = _poly_mul(
                    term, _pair_sum_power(i, j, edges_n - n_pair[(i, j)], m)
                )
            _poly_add_into(num, term)

    # clear the common denominator exactly
    for (i, j) in pairs:
        for _ in range(edges_n):
            quot, rem = _div_pair_sum(num, i, j)
            if rem:
                raise UsageError(
                    f"moment {degrees} with {m} indices is not a polynomial "
                    f"in q (residual (q{i+1}+q{j+1}) pole)"
                )
            num = quot

    cutoff = max((sum(e) for e in num), default=0)
    scale = Fraction(coupling) if coupling is not None else Fraction(1)
    terms = {e: scale * c for e, c in num.items()}
    return MultiSeries(tuple(f"q{i+1}" for i in range(m)), cutoff, terms)


# ---------------------------------------------------------------------------
# fast exact path for m = 2, all-cubic vertices


def _rho_cubic(v: int):
    return [3 * (l // 3) + ((l % 3) + 1) % 3 for l in range(3 * v)]


def _face_key(total, rho, mate):
    """Canonical (face count, sorted edge face-pairs) key for a pairing.

    Face ids are relabeled in first appearance order along leg-ordered
    edges; each edge packs its two face ids into one byte. Pairings with
    equal keys have identical index-assignment censuses.
    """
    face = [-1] * total
    nf = 0
    for l in range(total):
        if face[l] < 0:
            cur = l
            while face[cur] < 0:
                face[cur] = nf
                cur = rho[mate[cur]]
            nf += 1
    relabel = [-1] * nf
    nxt = 0
    ebytes = []
    for l in range(total):
        mm = mate[l]
        if mm > l:
            ra = relabel[face[l]]
            if ra < 0:
                relabel[face[l]] = ra = nxt
                nxt += 1
            rb = relabel[face[mm]]
            if rb < 0:
                relabel[face[mm]] = rb = nxt
                nxt += 1
            ebytes.append((ra << 4) | rb if ra <= rb else (rb << 4) | ra)
    ebytes.sort()
    return bytes([nf] + ebytes)


def _census_completions(v: int, prefix_pairs) -> dict[bytes, int]:
    """Enumerate all completions of a partial pairing; count face keys."""
    total = 3 * v
    rho = _rho_cubic(v)
    mate = [-1] * total
    for a, b in prefix_pairs:
        mate[a] = b
        mate[b] = a
    free = [l for l in range(total) if mate[l] < 0]
    counts: dict[bytes, int] = {}
    key_fn = _face_key

    def rec(freelist):
        a = freelist[0]
        rest = freelist[1:]
        if not rest:
            raise InternalError("odd free-leg count")
        last = len(rest) == 1
        for idx in range(len(rest)):
            b = rest[idx]
            mate[a] = b
            mate[b] = a
            if last:
                key = key_fn(total, rho, mate)
                counts[key] = counts.get(key, 0) + 1
            else:
                rec(rest[:idx] + rest[idx + 1 :])
            mate[b] = -1
        mate[a] = -1

    if free:
        rec(free)
    else:
        key = key_fn(total, rho, mate)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _n2_worker(args):
    v, prefix_pairs = args
    return _census_completions(v, prefix_pairs)


def _branch_tasks(v: int):
    """Split the v=6 enumeration by symmetry and second-level branching.

    All pairings where leg 0 pairs inside its own vertex are equivalent to
    mate(0)=1 (reversing every vertex's cyclic order is a face-preserving
    relabeling that swaps legs 1 and 2); all cross-vertex choices are
    equivalent to mate(0)=3 (permuting vertices and rotating legs within a
    vertex preserve faces). So

        full census = 2 * census(mate0=1) + 15 * census(mate0=3),

    and each conditional census splits again on the next free leg's mate,
    giving 30 independent tasks of 13!! completions each.
    """
    tasks = []
    for first_mate, mult in ((1, 2), (3, 15)):
        used = {0, first_mate}
        nxt = min(l for l in range(3 * v) if l not in used)
        for b in range(nxt + 1, 3 * v):
            if b not in used:
                tasks.append(((v, ((0, first_mate), (nxt, b))), mult))
    return tasks


def cubic_moment_n2_census(v: int, threads: int | None = None) -> dict[bytes, int]:
    """Face-structure census of all pairings of (tr M^3)^v, exact counts."""
    if v < 2 or v % 2:
        raise UsageError(f"cubic moment needs even v >= 2, got {v}")
    total = 3 * v
    check_budget(total, f"cubic vertex enumeration v={v}")
    if v <= 4:
        return _census_completions(v, ())
    if v > 6:
        # budget allows it only with a raised RMT_BUDGET; no symmetry
        # reduction is wired beyond v=6
        return _census_completions(v, ())

    tasks = _branch_tasks(v)
    merged: dict[bytes, int] = {}
    results = None
    if threads is None or threads > 1:
        try:
            with ProcessPoolExecutor(max_workers=threads or os.cpu_count()) as ex:
                results = list(ex.map(_n2_worker, [t for t, _ in tasks]))
        except (OSError, PermissionError, RuntimeError):
            results = None  # sandboxed environments may forbid subprocesses
    if results is None:
        results = [_n2_worker(t) for t, _ in tasks]
    for (_, mult), res in zip(tasks, results):
        for key, cnt in res.items():
            merged[key] = merged.get(key, 0) + mult * cnt
    return merged


def _aggregate_assignment_hist(census: dict[bytes, int], edges_n: int):
    """Sum per-key index-assignment histograms over the census.

    For each of the 2^F assignments of indices {1,2} to faces, an edge is
    diagonal-1 (both faces index 1), diagonal-2, or mixed. The histogram
    counts assignments by (n1, n12); n2 = E - n1 - n12. Bit tricks over
    numpy keep the 2^F sweep cheap; counts are exact int64 (far below
    overflow at these sizes).
    """
    side = edges_n + 1
    agg = np.zeros(side * side, dtype=np.int64)
    for key, mult in census.items():
        nf = key[0]
        edges = [(b >> 4, b & 15) for b in key[1:]]
        if len(edges) != edges_n:
            raise InternalError("census key with wrong edge count")
        s = np.arange(1 << nf, dtype=np.uint32)
        n1 = np.zeros(s.shape, dtype=np.int64)
        n12 = np.zeros(s.shape, dtype=np.int64)
        for a, b in edges:
            ba = (s >> a) & 1
            bb = (s >> b) & 1
            n12 += ba ^ bb
            n1 += (ba | bb) ^ 1
        hist = np.bincount(n1 * side + n12, minlength=side * side)
        agg += mult * hist
    return agg


def _div_by_x_plus_1(vec):
    d = len(vec) - 1
    q = [0] * d
    q[d - 1] = vec[d]
    for j in range(d - 1, 0, -1):
        q[j - 1] = vec[j] - q[j]
    if vec[0] - q[0] != 0:
        raise InternalError("cubic moment polynomial division left a remainder")
    return q


_vec_cache: dict[int, list[int]] = {}


def cubic_moment_n2_vec(v: int, threads: int | None = None) -> list[int]:
    """<(tr M^3)^v> for 2x2 M: integer coefficients of q1^i q2^{E-i}, i=0..E.

    The moment is homogeneous of degree E = 3v/2 in (q1, q2). Assignment
    sums are assembled over the common denominator (q1+q2)^E and divided
    out exactly; a remainder would be a bug, not an input condition.
    Results are cached per v (they are deterministic and the v=6 census is
    the expensive step of the whole package).
    """
    if v in _vec_cache:
        return list(_vec_cache[v])
    census = cubic_moment_n2_census(v, threads=threads)
    edges_n = 3 * v // 2
    side = edges_n + 1
    agg = _aggregate_assignment_hist(census, edges_n)
    # homogenized integer polynomial: coefficient of q1^i q2^{2E-i}
    vec = [0] * (2 * edges_n + 1)
    for n1 in range(side):
        for n12 in range(side - n1):
            cnt = int(agg[n1 * side + n12])
            if not cnt:
                continue
            w = cnt << n12  # factor 2 per mixed edge
            base = n1 + n12
            rest = edges_n - n12
            for t in range(rest + 1):
                vec[base + t] += w * comb(rest, t)
    for _ in range(edges_n):
        vec = _div_by_x_plus_1(vec)
    _vec_cache[v] = list(vec)
    return vec


def cubic_moment_n2(v: int, threads: int | None = None) -> MultiSeries:
    """Same as cubic_moment_n2_vec, packaged as an exact MultiSeries."""
    vec = cubic_moment_n2_vec(v, threads=threads)
    edges_n = 3 * v // 2
    terms = {
        (i, edges_n - i): Fraction(c) for i, c in enumerate(vec) if c
    }
    return MultiSeries(("q1", "q2"), edges_n, terms)


def total_pairings_cubic(v: int) -> int:
    """(3v-1)!! pairing count for v cubic vertices (census sanity check)."""
    return pairing_count(3 * v)
