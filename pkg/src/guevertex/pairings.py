"""Wick-pairing oracle for Gaussian Hermitian matrix moments.

A product of single-trace vertices tr M^{k_1} ... tr M^{k_n} is evaluated by
summing over all pairings of the K = sum k_i legs. Legs are indexed globally
0..K-1 in vertex-major order and sit cyclically around their vertex; a
pairing glues them into a ribbon graph. With the propagator
<M_ij M_kl> = delta_il delta_jk / N each face (index loop) contributes a
factor N, each edge a factor 1/N, so the normalized correlator

    V(k_1..k_n) = N^{-n} <prod_i tr M^{k_i}> = N^{-n} sum_pairings N^{F-E}

is an exact Laurent polynomial in nu = 1/N. Everything here is brute-force
enumeration with exact arithmetic; it is the ground truth the closed-form
modules are tested against.
"""

from __future__ import annotations

from .budget import check_budget, pairing_count
from .errors import UsageError
from .series import NLaurent


def enumerate_pair_partitions(total_legs: int, skip_budget: bool = False):
    """Yield all involutions without fixed points on 0..total_legs-1.

    Canonical order: the smallest unmatched leg is paired with each larger
    unmatched leg in increasing order, recursively. Odd counts yield nothing.
    """
    if total_legs < 0:
        raise UsageError(f"leg count must be >= 0, got {total_legs}")
    if total_legs % 2:
        return
    if total_legs == 0:
        yield ()
        return
    if not skip_budget:
        check_budget(total_legs, "pair partition enumeration")
    mate = [-1] * total_legs

    def rec(done):
        l0 = 0
        while mate[l0] >= 0:
            l0 += 1
        for m in range(l0 + 1, total_legs):
            if mate[m] < 0:
                mate[l0] = m
                mate[m] = l0
                if done + 2 == total_legs:
                    yield tuple(mate)
                else:
                    yield from rec(done + 2)
                mate[l0] = -1
                mate[m] = -1

    yield from rec(0)


def next_leg_table(degrees):
    """rho[l] = next leg counterclockwise around l's vertex."""
    rho = []
    start = 0
    for d in degrees:
        for i in range(d):
            rho.append(start + (i + 1) % d)
        start += d
    return rho


def vertex_of_table(degrees):
    """vertex_of[l] = index of the vertex carrying leg l."""
    out = []
    for v, d in enumerate(degrees):
        out.extend([v] * d)
    return out


def face_map(degrees, mate):
    """Label each leg with its face id; return (face_of, face_count).

    Faces are the cycles of (next-around-vertex o mate). A vertex with zero
    legs bounds one face of its own (tr M^0 = N) and is counted too, though
    it labels no legs.
    """
    rho = next_leg_table(degrees)
    total = len(rho)
    face_of = [-1] * total
    faces = 0
    for l in range(total):
        if face_of[l] < 0:
            cur = l
            while face_of[cur] < 0:
                face_of[cur] = faces
                cur = rho[mate[cur]]
            faces += 1
    faces += sum(1 for d in degrees if d == 0)
    return face_of, faces


def face_count(degrees, mate) -> int:
    return face_map(degrees, mate)[1]


def is_connected(degrees, mate) -> bool:
    """True if the pairing's edges connect all vertices (union-find)."""
    n = len(degrees)
    if n <= 1:
        return True
    if any(d == 0 for d in degrees):
        return False
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    vertex_of = vertex_of_table(degrees)
    merged = 0
    for l, m in enumerate(mate):
        if l < m:
            ra, rb = find(vertex_of[l]), find(vertex_of[m])
            if ra != rb:
                parent[ra] = rb
                merged += 1
    return merged == n - 1


def _validated(degrees):
    degrees = [int(d) for d in degrees]
    if any(d < 0 for d in degrees):
        raise UsageError(f"vertex degrees must be >= 0, got {degrees}")
    return degrees


def vertex_moment(degrees) -> NLaurent:
    """V(k_1..k_n) = N^{-n} <prod tr M^{k_i}> as exact polynomial in nu=1/N.

    Includes disconnected pairings. Zero polynomial when sum k_i is odd.
    """
    degrees = _validated(degrees)
    n = len(degrees)
    total = sum(degrees)
    if total % 2:
        return NLaurent()
    edges = total // 2
    counts: dict[int, int] = {}
    for mate in enumerate_pair_partitions(total):
        f = face_count(degrees, mate)
        e = n - f + edges  # nu exponent
        counts[e] = counts.get(e, 0) + 1
    return NLaurent(counts)


def connected_moment(degrees) -> NLaurent:
    """Same sum restricted to pairings connecting all vertices (cumulant)."""
    degrees = _validated(degrees)
    n = len(degrees)
    total = sum(degrees)
    if total % 2:
        return NLaurent()
    edges = total // 2
    counts: dict[int, int] = {}
    for mate in enumerate_pair_partitions(total):
        if not is_connected(degrees, mate):
            continue
        f = face_count(degrees, mate)
        e = n - f + edges
        counts[e] = counts.get(e, 0) + 1
    return NLaurent(counts)


def genus_census(degrees) -> dict[int, int]:
    """Pairing counts by genus, over connected pairings only.

    For a connected gluing, n - E + F = 2 - 2g defines the genus. A
    disconnected pairing has no single genus, so the census skips it.
    """
    degrees = _validated(degrees)
    n = len(degrees)
    total = sum(degrees)
    if total % 2:
        return {}
    edges = total // 2
    out: dict[int, int] = {}
    for mate in enumerate_pair_partitions(total):
        if not is_connected(degrees, mate):
            continue
        f = face_count(degrees, mate)
        chi = n - edges + f
        g, rem = divmod(2 - chi, 2)
        if rem or g < 0:
            raise UsageError(f"Euler count failed on connected pairing: chi={chi}")
        out[g] = out.get(g, 0) + 1
    return dict(sorted(out.items()))


def expected_pairing_count(total_legs: int) -> int:
    """(K-1)!! for even K, else 0. Exposed for count checks."""
    return pairing_count(total_legs)


def set_partitions(items):
    """All partitions of a list into nonempty blocks (exponential; small n)."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1 :]
        yield [[head]] + part
