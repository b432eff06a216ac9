"""Brute-force reference implementations used only by the tests.

These deliberately avoid the library's search/closure algorithms: the
truncated sum is a max-scan over an explicit point list, distances are
exhaustive trail enumeration, and the four-values oracle quantifies over
ordered quadruples straight from the definition.
"""

from fractions import Fraction


def oplus_points(points, a, b):
    """Truncated sum over an explicit finite point list (max-scan)."""
    s = a + b
    best = None
    for x in points:
        if x <= s and (best is None or x > best):
            best = x
    if best is None:
        raise ValueError("no point below the bound")
    return best


def assoc_holds(points):
    """Associativity over all ordered triples, from the definition."""
    for a in points:
        for b in points:
            for c in points:
                lhs = oplus_points(points, oplus_points(points, a, b), c)
                rhs = oplus_points(points, a, oplus_points(points, b, c))
                if lhs != rhs:
                    return False
    return True


def _metric(a, b, c):
    return a <= b + c and b <= a + c and c <= a + b


def four_values_holds(points):
    """The four-values condition over all ordered quadruples and linking
    elements, straight from the definition (O(n^6))."""
    for a in points:
        for b in points:
            for c in points:
                for d in points:
                    if max(b, c, d) > a or a > b + c + d:
                        continue
                    for x in points:
                        if not (_metric(a, b, x) and _metric(c, d, x)):
                            continue
                        if not any(
                            _metric(a, d, y) and _metric(c, b, y)
                            for y in points
                        ):
                            return False
    return True


def all_trails(graph, start, end):
    """Every vertex-distinct walk from start to end, as vertex id lists."""
    out = []
    path = [start]
    seen = {start}

    def rec(cur):
        if cur == end and len(path) > 1:
            out.append(list(path))
            return
        i = graph.index(cur)
        for j, _ in graph._adj[i]:
            nxt = graph.vertices[j]
            if nxt in seen:
                continue
            seen.add(nxt)
            path.append(nxt)
            rec(nxt)
            path.pop()
            seen.remove(nxt)

    if start == end:
        return [[start]]
    rec(start)
    return out


def trail_distance(graph, start, end):
    """Minimum fold weight over all trails, or None when disconnected."""
    from distset.rgraph import walk_weight

    if start == end:
        return Fraction(0)
    best = None
    for trail in all_trails(graph, start, end):
        w = walk_weight(graph, trail)
        if best is None or w < best:
            best = w
    return best
