import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from distset import (
    BridgeInput,
    FiniteMetricSpace,
    RGraph,
    RSet,
    check_associativity,
)
from distset import _core


@pytest.fixture
def ground_0123():
    return RSet([0, 1, 2, 3])


@pytest.fixture
def desk_bridge(ground_0123):
    """Three-point U, two-point V paired on the first two indices, r = 1."""
    space_u = FiniteMetricSpace(
        ground_0123,
        ["u0", "u1", "u2"],
        [[0, 1, 2], [1, 0, 2], [2, 2, 0]],
    )
    space_v = FiniteMetricSpace(
        ground_0123, ["v0", "v1"], [[0, 2], [2, 0]]
    )
    return BridgeInput(
        ground_set=ground_0123,
        space_u=space_u,
        space_v=space_v,
        index_map=(0, 1),
        r=Fraction(1),
    )


def random_finite_set(rng: random.Random, max_size=8, max_den=12, top=3):
    """Random finite distance set containing 0, denominators <= max_den."""
    size = rng.randint(1, max_size - 1)
    values = {Fraction(0)}
    while len(values) < size + 1:
        q = rng.randint(1, max_den)
        p = rng.randint(1, top * q)
        values.add(Fraction(p, q))
    return RSet(sorted(values))


def random_associative_set(rng: random.Random, max_size=8):
    """Random finite set passing the associativity check.

    Rejection-samples a few times, then falls back to an arithmetic grid
    capped at its top (always associative)."""
    for _ in range(40):
        cand = random_finite_set(rng, max_size=max_size)
        if check_associativity(cand).passed:
            return cand
    g = Fraction(1, rng.randint(1, 8))
    k = rng.randint(1, max_size - 1)
    return RSet([g * i for i in range(k + 1)])


def random_metric_space(rng: random.Random, ground: RSet, n: int, prefix="m"):
    """Random space over a finite ground set: random positive weights on
    the complete graph, closed under (min, truncated sum)."""
    positive = [v for v in ground.points() if v > 0]
    den, los, his = ground.scaled()
    flat = [-1] * (n * n)
    for i in range(n):
        flat[i * n + i] = 0
    for i in range(n):
        for j in range(i + 1, n):
            w = int(rng.choice(positive) * den)
            flat[i * n + j] = w
            flat[j * n + i] = w
    _core.all_pairs_completion(n, flat, los, his)
    d = [
        [Fraction(flat[i * n + j], den) for j in range(n)] for i in range(n)
    ]
    points = [f"{prefix}{i}" for i in range(n)]
    return FiniteMetricSpace(ground, points, d)


def random_unit_interval_space(rng: random.Random, n: int, max_den=16, prefix="m"):
    """Random space with rational distances in (0, 1]: random weights on
    the complete graph closed under (min, sum-capped-at-1)."""
    ground = RSet([(0, 1)])
    pts = [f"{prefix}{i}" for i in range(n)]
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q = rng.randint(1, max_den)
            w = Fraction(rng.randint(1, q), q)
            d[i][j] = d[j][i] = w
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                cand = min(d[i][k] + d[k][j], Fraction(1))
                if 0 < cand < d[i][j]:
                    d[i][j] = cand
    return FiniteMetricSpace(ground, pts, d)


def random_connected_metric_graph(rng: random.Random, ground: RSet, n: int):
    """Connected metric graph: a random spanning-connected edge subset of
    a random space over the ground set, weighted by its distances."""
    space = random_metric_space(rng, ground, n, prefix="g")
    pts = space.points
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for a, b in zip(order, order[1:]):
        edges.add((min(a, b), max(a, b)))
    extra = rng.randint(0, n * (n - 1) // 2 - (n - 1))
    all_pairs = [
        (i, j) for i in range(n) for j in range(i + 1, n)
    ]
    rng.shuffle(all_pairs)
    for pair in all_pairs:
        if len(edges) >= (n - 1) + extra:
            break
        edges.add(pair)
    graph = RGraph(
        ground,
        pts,
        [
            (pts[i], pts[j], space.dist_by_index(i, j))
            for i, j in sorted(edges)
        ],
    )
    return graph, space
