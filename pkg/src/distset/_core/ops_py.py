"""Pure-Python reference kernels.

All kernels work on *scaled integers*: callers pick a common denominator
for every rational that can appear during a computation and pass plain
ints.  Because the truncated sum of two set members is either an interval
endpoint or an exact sum, the common denominator is stable under every
operation here, so integer arithmetic stays exact.

The compiled backend in ``_ops_cy.pyx`` implements the same functions
with the same iteration order; results must be bit-identical.

Set representation: two parallel sorted lists ``los``/``his`` of closed
interval endpoints, pairwise disjoint and ascending.  Finite point sets
are the degenerate case ``los == his``.
"""

from bisect import bisect_left, bisect_right

BACKEND = "python"


def sup_le(los, his, s):
    # largest set element <= s; callers guarantee one exists
    t = bisect_right(los, s) - 1
    if t < 0:
        raise ValueError("no set element below the requested bound")
    h = his[t]
    return h if s > h else s


def _member_in(points, lo, hi):
    # any point of the sorted list in the closed window [lo, hi]?
    if lo > hi:
        return False
    i = bisect_left(points, lo)
    return i < len(points) and points[i] <= hi


def scan_assoc(los, his, cands):
    """First multiset {x <= y <= z} of candidates on which the truncated
    sum is not associative, as ascending indices, or None.

    For a commutative operation, associativity over all ordered triples
    is equivalent to the three grouped products of every value multiset
    agreeing, so scanning multisets is exhaustive.
    """
    n = len(cands)
    for i in range(n):
        x = cands[i]
        for j in range(i, n):
            y = cands[j]
            xy = sup_le(los, his, x + y)
            for k in range(j, n):
                z = cands[k]
                p1 = sup_le(los, his, xy + z)
                p3 = sup_le(los, his, sup_le(los, his, y + z) + x)
                if p1 != p3:
                    return (i, j, k)
                p2 = sup_le(los, his, sup_le(los, his, x + z) + y)
                if p1 != p2:
                    return (i, j, k)
    return None


def check_triples(los, his, triples):
    """Index of the first non-associative (x, y, z) triple, or -1.

    ``triples`` is a flat list ``[x0, y0, z0, x1, y1, z1, ...]``.
    """
    for t in range(0, len(triples), 3):
        x, y, z = triples[t], triples[t + 1], triples[t + 2]
        p1 = sup_le(los, his, sup_le(los, his, x + y) + z)
        p2 = sup_le(los, his, sup_le(los, his, x + z) + y)
        p3 = sup_le(los, his, sup_le(los, his, y + z) + x)
        if not (p1 == p2 == p3):
            return t // 3
    return -1


def scan_four_values(points):
    """First four-values violation over a finite point set, or None.

    Scans value multisets {e1 <= e2 <= e3 <= a}: the quadruple is
    admissible when a <= e1 + e2 + e3, and the condition holds for every
    arrangement iff the three pairings {a,e}|{rest} admit a linking
    element either all together or not at all.  A linking element for the
    pairing {p,q}|{s,t} exists iff the set meets the closed window
    [max(|p-q|, |s-t|), min(p+q, s+t)].

    Returns ascending indices (i, j, k, l) of the offending multiset
    (``points[l]`` is the maximal entry).
    """
    n = len(points)
    for i in range(n):
        e1 = points[i]
        for j in range(i, n):
            e2 = points[j]
            for k in range(j, n):
                e3 = points[k]
                for l in range(k, n):
                    a = points[l]
                    if a > e1 + e2 + e3:
                        break  # points ascending: larger l only worse
                    b1 = _member_in(
                        points,
                        max(a - e1, abs(e2 - e3)),
                        min(a + e1, e2 + e3),
                    )
                    b2 = _member_in(
                        points,
                        max(a - e2, abs(e1 - e3)),
                        min(a + e2, e1 + e3),
                    )
                    if b1 != b2:
                        return (i, j, k, l)
                    b3 = _member_in(
                        points,
                        max(a - e3, abs(e1 - e2)),
                        min(a + e3, e1 + e2),
                    )
                    if b1 != b3:
                        return (i, j, k, l)
    return None


def closure_step(points, los, his):
    """One closure round: the sorted union of ``points`` with all
    pairwise truncated sums (taken in the ambient set ``los``/``his``)."""
    out = set(points)
    n = len(points)
    for i in range(n):
        p = points[i]
        for j in range(i, n):
            out.add(sup_le(los, his, p + points[j]))
    return sorted(out)


def all_pairs_completion(n, d, los, his):
    """All-pairs walk-infimum closure of a weight matrix, in place.

    ``d`` is a flat n*n list with -1 marking absent edges and 0 on the
    diagonal.  Aggregation along a walk is the truncated sum; selection
    across walks is min.  The truncated sum distributes over min and
    never decreases when extended, so the standard triple loop computes
    the infimum over all walks.
    """
    for k in range(n):
        kn = k * n
        for i in range(n):
            dik = d[i * n + k]
            if dik < 0:
                continue
            base = i * n
            for j in range(n):
                dkj = d[kn + j]
                if dkj < 0:
                    continue
                cand = sup_le(los, his, dik + dkj)
                cur = d[base + j]
                if cur < 0 or cand < cur:
                    d[base + j] = cand
    return d


def validate_metric(n, d):
    """First metric-axiom violation in a flat n*n matrix, or None.

    Returns ("diag", i, i), ("sym", i, j), ("pos", i, j) or
    ("tri", i, j, k) for d[i][j] > d[i][k] + d[k][j].
    """
    for i in range(n):
        if d[i * n + i] != 0:
            return ("diag", i, i)
    for i in range(n):
        for j in range(i + 1, n):
            if d[i * n + j] != d[j * n + i]:
                return ("sym", i, j)
            if d[i * n + j] <= 0:
                return ("pos", i, j)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            dij = d[i * n + j]
            for k in range(n):
                if k == i or k == j:
                    continue
                if dij > d[i * n + k] + d[k * n + j]:
                    return ("tri", i, j, k)
    return None
