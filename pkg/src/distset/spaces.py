"""Finite stand-ins for universal homogeneous metric spaces, and the
partition / oscillation experiments that run on them.

A *one-point extension prescription* (Katetov function) over a subset F
of a space assigns each x in F a positive target distance f(x) subject
to the two-sided triangle constraints

    |f(x) - f(y)| <= d(x, y) <= f(x) + f(y),

exactly the condition under which a new point at those distances can be
adjoined.  Saturating a space under such prescriptions up to a fixed
witness arity is the finitary engine behind homogeneity and
universality: every 3-point space is a 2-point space plus a
prescription, so realizing every extension type of arity 2 (over some
copy of its base configuration) makes the space universal for 3-point
spaces over the same distance set.

The searches in this module (isometric embedding, monochromatic or
near-monochromatic copies, low-oscillation copies, enumeration-order
embeddings) are deterministic backtracking searches with explicit node
budgets.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .checks import (
    CheckReport,
    VERDICT_EXHAUSTIVE,
    VERDICT_FAILED,
    check_4values,
)
from .errors import (
    BudgetError,
    CheckFailedError,
    CompletionError,
    ParameterError,
    PartitionError,
)
from .rationals import as_rational, rational_str
from .rgraph import FiniteMetricSpace
from .rset import RSet

ZERO = Fraction(0)


@dataclass(frozen=True)
class KatetovFunction:
    """Distance prescription for a prospective new point."""

    domain: tuple[str, ...]
    values: dict[str, Fraction]

    def to_json_obj(self) -> dict:
        return {
            "values": {p: rational_str(self.values[p]) for p in self.domain}
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "KatetovFunction":
        values = {
            str(p): as_rational(v) for p, v in obj.get("values", {}).items()
        }
        return cls(domain=tuple(sorted(values)), values=values)


@dataclass(frozen=True)
class Coloring:
    """Total assignment of points to finitely many colour classes."""

    parts: dict[str, int]

    def classes(self) -> list[int]:
        return sorted(set(self.parts.values()))

    def class_points(self, colour: int) -> list[str]:
        return [p for p, c in self.parts.items() if c == colour]

    def to_json_obj(self) -> dict:
        return {"parts": dict(self.parts)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Coloring":
        return cls(parts={str(p): int(c) for p, c in obj.get("parts", {}).items()})


def eps_neighborhood(
    space: FiniteMetricSpace, subset: Iterable[str], eps
) -> list[str]:
    """Points strictly within eps of the subset, in point order."""
    e = as_rational(eps)
    if e <= 0:
        raise ParameterError("eps must be positive")
    inside = [str(p) for p in subset]
    for p in inside:
        space.index(p)
    return [
        q
        for q in space.points
        if any(space.dist(q, p) < e for p in inside)
    ]


def enumerate_katetov(
    space: FiniteMetricSpace, subset: Sequence[str], values: RSet
) -> list[KatetovFunction]:
    """All prescriptions over ``subset`` with values in the positive part
    of the finite set ``values``."""
    if not values.is_finite():
        raise ParameterError("the value set must be finite")
    domain = tuple(str(p) for p in subset)
    for p in domain:
        space.index(p)
    positive = [v for v in values.points() if v > 0]
    found: list[KatetovFunction] = []
    assignment: dict[str, Fraction] = {}

    def assign(pos: int) -> None:
        if pos == len(domain):
            found.append(
                KatetovFunction(domain=domain, values=dict(assignment))
            )
            return
        p = domain[pos]
        for v in positive:
            ok = True
            for q in domain[:pos]:
                d = space.dist(p, q)
                w = assignment[q]
                if abs(v - w) > d or d > v + w:
                    ok = False
                    break
            if ok:
                assignment[p] = v
                assign(pos + 1)
                del assignment[p]

    assign(0)
    return found


def realizes(space: FiniteMetricSpace, func: KatetovFunction) -> bool:
    """Does some existing point sit at exactly the prescribed distances?"""
    return any(
        all(space.dist(z, p) == func.values[p] for p in func.domain)
        for z in space.points
    )


def _extension_class_key(space: FiniteMetricSpace, subset, values) -> tuple:
    """Isometry-class key of a one-point extension: the base's distance
    matrix together with the prescribed values, minimized over base
    orderings."""
    k = len(subset)
    idx = [space.index(p) for p in subset]
    best = None
    for perm in itertools.permutations(range(k)):
        base = tuple(
            space.dist_by_index(idx[perm[a]], idx[perm[b]])
            for a in range(k)
            for b in range(a + 1, k)
        )
        vals = tuple(values[perm[a]] for a in range(k))
        key = (base, vals)
        if best is None or key < best:
            best = key
    return best


def find_unrealized_katetov(
    space: FiniteMetricSpace, values: RSet, arity: int
) -> KatetovFunction | None:
    """First prescription whose extension type has no witness anywhere.

    A prescription over a subset is considered realized when *some
    isometric copy* of that subset has a point at the prescribed
    distances: saturation is a statement about one-point-extension
    types, not about individual subsets (no finite space can witness
    every prescription over every concrete subset).  Returns a
    representative over the first subset in point order exhibiting an
    unrealized type, or None when the space is saturated at this arity.
    """
    if arity < 1:
        raise ParameterError("arity must be at least 1")
    points = space.points
    for size in range(1, arity + 1):
        witnessed: set[tuple] = set()
        for subset in itertools.combinations(points, size):
            for z in points:
                if z in subset:
                    continue
                witnessed.add(
                    _extension_class_key(
                        space, subset, [space.dist(z, p) for p in subset]
                    )
                )
        for subset in itertools.combinations(points, size):
            for func in enumerate_katetov(space, subset, values):
                vals = [func.values[p] for p in subset]
                if _extension_class_key(space, subset, vals) not in witnessed:
                    return func
    return None


# -- saturation builder ------------------------------------------------------


def _admissible_pairs(values: Sequence[Fraction], d: Fraction):
    """Unordered admissible value pairs for a base pair at distance d."""
    out = []
    for a in range(len(values)):
        for b in range(a, len(values)):
            f1, f2 = values[a], values[b]
            if f2 - f1 <= d <= f1 + f2:
                out.append((f1, f2))
    return out


class _SaturationState:
    """Realized one-point-extension types of arity <= 2.

    Tracks which distances occur at all (the singleton types) and, per
    occurring pair distance, which unordered value pairs have a witness
    somewhere.  Both requirement sets live over the value set only, so
    they are finite and independent of the point count.
    """

    def __init__(self, positive: list[Fraction]):
        self.positive = positive
        self.pair_types: dict[Fraction, list] = {}
        self.present: set[Fraction] = set()
        self.witnessed: set[tuple] = set()
        self.instances: dict[Fraction, list[tuple[int, int]]] = {}

    def admissible(self, d: Fraction):
        if d not in self.pair_types:
            self.pair_types[d] = _admissible_pairs(self.positive, d)
        return self.pair_types[d]

    def add_point(self, d: list[list[Fraction]]) -> None:
        m = len(d) - 1
        row = d[m]
        for i in range(m):
            for j in range(i + 1, m):
                f1, f2 = sorted((row[i], row[j]))
                self.witnessed.add((d[i][j], f1, f2))
        for i in range(m):
            dist = row[i]
            self.present.add(dist)
            self.instances.setdefault(dist, []).append((i, m))
            for z in range(m):
                if z != i:
                    f1, f2 = sorted((d[z][i], row[z]))
                    self.witnessed.add((dist, f1, f2))

    def missing(self, arity: int) -> list[tuple]:
        out: list[tuple] = [
            ("single", v) for v in self.positive if v not in self.present
        ]
        if arity >= 2:
            for dist in sorted(self.present):
                for f1, f2 in self.admissible(dist):
                    if (dist, f1, f2) not in self.witnessed:
                        out.append(("pair", dist, f1, f2))
        return out

    def still_missing(self, req: tuple) -> bool:
        if req[0] == "single":
            return req[1] not in self.present
        _, dist, f1, f2 = req
        return (dist, f1, f2) not in self.witnessed


def build_saturated_space(
    values: RSet,
    max_points: int = 60,
    witness_arity: int = 2,
    seed: int = 0,
) -> FiniteMetricSpace:
    """Grow a space over a finite distance set by realizing unrealized
    one-point-extension types until saturation (or the point cap).

    Starts from a single point.  Each pass collects the extension types
    of arity <= witness_arity that lack a witness (a type is the
    isometry class of a base configuration together with the prescribed
    distances; no finite space can witness every prescription over every
    concrete base, so saturation is stated per type), visits them in a
    seeded random order and realizes each over a seeded choice of base
    instance.  The new point's distances to the remaining points are
    drawn (seeded) from the exact admissible window each point allows;
    the window always contains the walk-infimum completion value, so it
    is never empty.  A pass that realizes nothing means saturation; over
    a finite value set the type universe is finite, so saturation is
    reached unless the point cap interrupts it.

    The value set must contain 0 and pass the exhaustive four-values
    check, else CheckFailedError; an empty extension window (impossible
    for a four-values set) surfaces as CompletionError.
    """
    if not values.is_finite() or not values.contains(0):
        raise ParameterError("need a finite value set containing 0")
    if max_points < 1:
        raise ParameterError("max_points must be at least 1")
    if witness_arity < 1:
        raise ParameterError("witness arity must be at least 1")
    report = check_4values(values)
    if not report.passed:
        raise CheckFailedError(
            f"value set fails the four-values check; witness {report.witness}"
        )

    positive = [v for v in values.points() if v > 0]
    pts = ["p0"]
    d: list[list[Fraction]] = [[ZERO]]
    if not positive:
        return FiniteMetricSpace(values, pts, d)

    state = _SaturationState(positive)
    rng = random.Random(seed)

    def realize(subset: tuple[int, ...], prescription: tuple) -> None:
        new_id = f"p{len(pts)}"
        row: list[Fraction | None] = [None] * len(pts)
        for pos, i in enumerate(subset):
            row[i] = prescription[pos]
        fixed = list(subset)
        for w in range(len(pts)):
            if row[w] is not None:
                continue
            lo = max(abs(row[x] - d[x][w]) for x in fixed)
            hi = min(row[x] + d[x][w] for x in fixed)
            choices = [v for v in positive if lo <= v <= hi]
            if not choices:
                raise CompletionError(
                    f"no admissible distance for the new point at {pts[w]}"
                )
            row[w] = rng.choice(choices)
            fixed.append(w)
        for a in range(len(pts)):
            d[a].append(row[a])
        d.append(list(row) + [ZERO])
        pts.append(new_id)
        state.add_point(d)

    def realize_requirement(req: tuple) -> None:
        if req[0] == "single":
            anchor = rng.randrange(len(pts))
            realize((anchor,), (req[1],))
        else:
            _, dist, f1, f2 = req
            i, j = rng.choice(state.instances[dist])
            realize((i, j), (f1, f2))

    while len(pts) < max_points:
        missing = state.missing(witness_arity)
        generic_func = None
        if not missing and witness_arity > 2:
            space = FiniteMetricSpace(values, pts, d, validate=False)
            generic_func = find_unrealized_katetov(space, values, witness_arity)
            if generic_func is not None:
                subset = tuple(space.index(p) for p in generic_func.domain)
                realize(
                    subset,
                    tuple(generic_func.values[p] for p in generic_func.domain),
                )
                continue
        if not missing:
            break
        rng.shuffle(missing)
        progress = False
        for req in missing:
            if len(pts) >= max_points:
                break
            if state.still_missing(req):
                realize_requirement(req)
                progress = True
        if not progress:
            break
    return FiniteMetricSpace(values, pts, d, validate=True)


# -- embedding searches ------------------------------------------------------


def _search_embedding(
    space: FiniteMetricSpace,
    target: list[list[Fraction]],
    candidates: Sequence[str],
    budget: list[int] | None,
) -> dict[int, str] | None:
    """Backtracking search for an exact-distance injection of a target
    matrix into the candidate points, in deterministic order."""
    chosen: list[str] = []

    def rec(pos: int) -> bool:
        if pos == len(target):
            return True
        for cand in candidates:
            if cand in chosen:
                continue
            if budget is not None:
                if budget[0] <= 0:
                    raise BudgetError("embedding search budget exhausted")
                budget[0] -= 1
            if all(
                space.dist(chosen[t], cand) == target[t][pos]
                for t in range(pos)
            ):
                chosen.append(cand)
                if rec(pos + 1):
                    return True
                chosen.pop()
        return False

    if rec(0):
        return dict(enumerate(chosen))
    return None


def find_isometric_copy(
    space: FiniteMetricSpace,
    target: FiniteMetricSpace,
    candidates: Sequence[str] | None = None,
    budget: int | None = 1_000_000,
) -> dict[str, str] | None:
    """Isometric embedding of ``target`` into ``space`` (restricted to
    ``candidates`` when given), or None."""
    cands = list(candidates) if candidates is not None else list(space.points)
    counter = None if budget is None else [budget]
    hit = _search_embedding(space, target.matrix(), cands, counter)
    if hit is None:
        return None
    return {target.points[i]: p for i, p in hit.items()}


def check_universality(
    space: FiniteMetricSpace, values: RSet, n: int, budget: int = 5_000_000
) -> CheckReport:
    """Try to embed every space on <= n points with distances in the
    positive part of ``values``; exhaustive up to isomorphism.

    The candidate spaces are enumerated as canonical distance matrices
    (minimal under point permutations); the budget caps the number of
    matrix assignments plus embedding nodes.
    """
    if not values.is_finite():
        raise ParameterError("the value set must be finite")
    if n < 1:
        raise ParameterError("n must be at least 1")
    positive = [v for v in values.points() if v > 0]
    counter = [budget]

    for k in range(1, n + 1):
        if k == 1:
            if len(space.points) >= 1:
                continue
            return CheckReport(
                check="universality",
                verdict=VERDICT_FAILED,
                witness={},
                note="the space is empty",
            )
        seen: set[tuple] = set()
        for matrix in _enumerate_matrices(k, positive, counter):
            canon = _canonical_form(k, matrix)
            if canon in seen:
                continue
            seen.add(canon)
            hit = _search_embedding(space, matrix, list(space.points), counter)
            if hit is None:
                witness = {
                    f"d({i},{j})": matrix[i][j]
                    for i in range(k)
                    for j in range(i + 1, k)
                }
                return CheckReport(
                    check="universality",
                    verdict=VERDICT_FAILED,
                    witness=witness,
                    note=f"no isometric copy of this {k}-point space",
                )
    return CheckReport(check="universality", verdict=VERDICT_EXHAUSTIVE)


def _enumerate_matrices(k: int, positive: Sequence[Fraction], counter):
    """All k-point distance matrices with entries from ``positive`` that
    satisfy the triangle inequality, by backtracking over pairs."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    matrix = [[ZERO] * k for _ in range(k)]
    done: set[tuple[int, int]] = set()

    def rec(pos: int):
        if pos == len(pairs):
            yield [row[:] for row in matrix]
            return
        i, j = pairs[pos]
        for v in positive:
            if counter[0] <= 0:
                raise BudgetError("universality enumeration budget exhausted")
            counter[0] -= 1
            ok = True
            for t in range(k):
                if t == i or t == j:
                    continue
                if (i, t) in done and (j, t) in done:
                    a, b = matrix[i][t], matrix[j][t]
                    if abs(a - b) > v or v > a + b:
                        ok = False
                        break
            if ok:
                matrix[i][j] = matrix[j][i] = v
                done.add((i, j))
                done.add((j, i))
                yield from rec(pos + 1)
                done.discard((i, j))
                done.discard((j, i))

    yield from rec(0)


def _canonical_form(k: int, matrix) -> tuple:
    best = None
    for perm in itertools.permutations(range(k)):
        flat = tuple(
            matrix[perm[i]][perm[j]]
            for i in range(k)
            for j in range(i + 1, k)
        )
        if best is None or flat < best:
            best = flat
    return best


def check_extension_property(
    space: FiniteMetricSpace, k: int, budget: int = 1_000_000
) -> CheckReport:
    """One-point extension of partial isometries of size <= k.

    For every isometry between subsets of at most k points and every
    point x outside the domain, some y outside the image must extend the
    map; the first stuck pair is the witness.
    """
    if k < 1:
        raise ParameterError("k must be at least 1")
    pts = space.points
    n = len(pts)
    counter = [budget]
    stuck: list[tuple] = []

    def extendable(dom: list[int], img: list[int], x: int) -> bool:
        for y in range(n):
            if y in img:
                continue
            if all(
                space.dist_by_index(y, img[t]) == space.dist_by_index(x, dom[t])
                for t in range(len(dom))
            ):
                return True
        return False

    def rec(dom: list[int], img: list[int]) -> bool:
        if dom:
            for x in range(n):
                if x in dom:
                    continue
                if counter[0] <= 0:
                    raise BudgetError("extension-check budget exhausted")
                counter[0] -= 1
                if not extendable(dom, img, x):
                    stuck.append((list(dom), list(img), x))
                    return False
        if len(dom) == k:
            return True
        start = dom[-1] + 1 if dom else 0
        for a in range(start, n):
            for b in range(n):
                if b in img:
                    continue
                if any(
                    space.dist_by_index(a, dom[t])
                    != space.dist_by_index(b, img[t])
                    for t in range(len(dom))
                ):
                    continue
                dom.append(a)
                img.append(b)
                if not rec(dom, img):
                    return False
                dom.pop()
                img.pop()
        return True

    if rec([], []):
        return CheckReport(check="extension", verdict=VERDICT_EXHAUSTIVE)
    dom, img, x = stuck[0]
    return CheckReport(
        check="extension",
        verdict=VERDICT_FAILED,
        witness={
            "domain": [pts[i] for i in dom],
            "image": [pts[i] for i in img],
            "x": pts[x],
        },
        note="no point extends this partial isometry over x",
    )


def find_order_embedding(
    space: FiniteMetricSpace,
    target: Iterable[str],
    budget: int = 1_000_000,
    length: int | None = None,
) -> tuple[str, ...] | None:
    """Enumeration-order-preserving isometric embedding of the first
    ``length`` points of the space into the target subset.

    The space's point order is its enumeration.  Returns the image
    points (aligned with the initial segment) or None.
    """
    targets = sorted({space.index(p) for p in target})
    want = len(space.points) if length is None else length
    if want < 0 or want > len(space.points):
        raise ParameterError("length must be between 0 and the point count")
    counter = [budget]
    chosen: list[int] = []

    def rec(pos: int) -> bool:
        if pos == want:
            return True
        lower = chosen[-1] if chosen else -1
        for t in targets:
            if t <= lower:
                continue
            if counter[0] <= 0:
                raise BudgetError("order-embedding budget exhausted")
            counter[0] -= 1
            if all(
                space.dist_by_index(t, chosen[i])
                == space.dist_by_index(pos, i)
                for i in range(pos)
            ):
                chosen.append(t)
                if rec(pos + 1):
                    return True
                chosen.pop()
        return False

    if rec(0):
        return tuple(space.points[t] for t in chosen)
    return None


def partition_distance_function(
    space: FiniteMetricSpace, part: Iterable[str]
) -> dict[str, Fraction]:
    """Distance to the opposite side of a two-part partition.

    f(p) = min distance from p to the complementary part; satisfies
    |f(p) - f(q)| <= 2 d(p, q) for all pairs.
    """
    x = {str(p) for p in part}
    for p in x:
        space.index(p)
    y = [p for p in space.points if p not in x]
    if not x or not y:
        raise PartitionError("partition needs two nonempty parts")
    xs = [p for p in space.points if p in x]
    out: dict[str, Fraction] = {}
    for p in xs:
        out[p] = min(space.dist(p, q) for q in y)
    for q in y:
        out[q] = min(space.dist(p, q) for p in xs)
    return out


def indivisibility_search(
    space: FiniteMetricSpace,
    coloring: Coloring,
    target: FiniteMetricSpace,
    eps,
    budget: int = 1_000_000,
) -> tuple[int, dict[str, str]] | None:
    """Isometric copy of ``target`` inside (a neighbourhood of) a colour
    class.

    eps = 0 asks for a copy inside the class itself; eps > 0 allows the
    open eps-neighbourhood.  Colours are tried in ascending order and the
    first copy found is returned as (colour, embedding).
    """
    e = as_rational(eps)
    if e < 0:
        raise ParameterError("eps must be non-negative")
    if set(coloring.parts) != set(space.points):
        raise ParameterError("colouring must assign every point a colour")
    if not target.realized_distances() <= space.realized_distances():
        raise ParameterError(
            "target realizes distances the space does not"
        )
    counter = [budget]
    for colour in coloring.classes():
        inside = coloring.class_points(colour)
        if e == 0:
            candidates = [p for p in space.points if p in set(inside)]
        else:
            candidates = eps_neighborhood(space, inside, e)
        if len(candidates) < len(target.points):
            continue
        hit = _search_embedding(space, target.matrix(), candidates, counter)
        if hit is not None:
            return colour, {target.points[i]: p for i, p in hit.items()}
    return None


def oscillation_search(
    space: FiniteMetricSpace,
    func: Mapping[str, Fraction],
    eps,
    target: FiniteMetricSpace,
    budget: int = 1_000_000,
) -> dict[str, str] | None:
    """Isometric copy of ``target`` on which ``func`` oscillates below
    eps (sup of pairwise gaps strictly under eps), or None."""
    e = as_rational(eps)
    if e <= 0:
        raise ParameterError("eps must be positive")
    values = {str(p): as_rational(v) for p, v in func.items()}
    if set(values) != set(space.points):
        raise ParameterError("the function must be total on the points")
    tgt = target.matrix()
    counter = [budget]
    chosen: list[str] = []

    def rec(pos: int, fmin: Fraction | None, fmax: Fraction | None) -> bool:
        if pos == len(tgt):
            return True
        for cand in space.points:
            if cand in chosen:
                continue
            if counter[0] <= 0:
                raise BudgetError("oscillation search budget exhausted")
            counter[0] -= 1
            v = values[cand]
            lo = v if fmin is None else min(fmin, v)
            hi = v if fmax is None else max(fmax, v)
            if hi - lo >= e:
                continue
            if all(
                space.dist(chosen[t], cand) == tgt[t][pos]
                for t in range(pos)
            ):
                chosen.append(cand)
                if rec(pos + 1, lo, hi):
                    return True
                chosen.pop()
        return False

    if rec(0, None, None):
        return {target.points[i]: chosen[i] for i in range(len(chosen))}
    return None
