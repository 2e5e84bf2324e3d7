import itertools
from fractions import Fraction

import pytest

from fbpersist import INF, PersistenceDiagram, PersistencePair, bottleneck_distance, bottleneck_excluding_essential
from fbpersist.core import EssentialCountMismatch, MissingFunctionTime
from fbpersist.metrics import finite_bottleneck


def diagram(points, dim=0):
    pairs = [PersistencePair(dim, 0, INF if d == INF else 1, b, d) for b, d in points]
    return PersistenceDiagram(tuple(pairs), "fg")


def brute(a, b):
    # every assignment of points to points or to the diagonal
    k1, k2 = len(a), len(b)
    left = list(a) + [None] * k2
    right = list(b) + [None] * k1

    def cost(x, y):
        if x is None and y is None:
            return 0
        if x is None:
            return Fraction(y[1] - y[0], 2)
        if y is None:
            return Fraction(x[1] - x[0], 2)
        return max(abs(x[0] - y[0]), abs(x[1] - y[1]))

    return min(
        max((cost(x, right[j]) for x, j in zip(left, perm)), default=0)
        for perm in itertools.permutations(range(k1 + k2))
    )


def random_points(rng, k):
    out = []
    for _ in range(k):
        b = rng.randint(0, 8)
        out.append((b, b + rng.randint(0, 6)))
    return out


def test_identical_diagrams():
    d = diagram([(0, INF), (1, 4), (2, 3)])
    assert bottleneck_distance(d, d, 0) == 0


def test_single_point_against_empty():
    assert bottleneck_distance(diagram([(0, 2)]), diagram([]), 0) == 1


def test_half_integer_distance_is_exact():
    assert bottleneck_distance(diagram([(0, 3)]), diagram([]), 0) == Fraction(3, 2)


def test_diagonal_points_do_not_matter():
    a = diagram([(0, INF), (1, 5)])
    b = diagram([(0, INF), (1, 5), (3, 3)])
    assert bottleneck_distance(a, b, 0) == 0


def test_essential_count_mismatch_is_infinite():
    assert bottleneck_distance(diagram([(0, INF)]), diagram([]), 0) == INF


def test_essential_points_matched_by_birth():
    a = diagram([(0, INF), (5, INF)])
    b = diagram([(1, INF), (5, INF)])
    assert bottleneck_distance(a, b, 0) == 1


def test_excluding_essential_requires_one_each():
    with pytest.raises(EssentialCountMismatch):
        bottleneck_excluding_essential(diagram([(0, INF), (1, INF)]), diagram([(0, INF)]))
    a = diagram([(0, INF), (1, 3)])
    b = diagram([(7, INF), (1, 3)])
    assert bottleneck_excluding_essential(a, b) == 0


def test_missing_function_time():
    step_only = PersistenceDiagram((PersistencePair(0, 0, 1),), "fg")
    with pytest.raises(MissingFunctionTime):
        bottleneck_distance(step_only, step_only, 0)


def test_dimension_filter():
    a = PersistenceDiagram((PersistencePair(1, 0, 1, 0, 4), PersistencePair(0, 0, INF, 0, INF)), "fg")
    b = PersistenceDiagram((PersistencePair(0, 0, INF, 0, INF),), "fg")
    assert bottleneck_distance(a, b, 0) == 0
    assert bottleneck_distance(a, b, 1) == 2


def test_matches_brute_force(rng):
    for _ in range(150):
        a = random_points(rng, rng.randint(0, 3))
        b = random_points(rng, rng.randint(0, 3))
        assert finite_bottleneck(a, b) == brute(a, b)


def test_symmetry_and_triangle_inequality(rng):
    for _ in range(100):
        a, b, c = (diagram(random_points(rng, rng.randint(0, 4))) for _ in range(3))
        ab = bottleneck_distance(a, b, 0)
        assert ab == bottleneck_distance(b, a, 0)
        assert bottleneck_distance(a, c, 0) <= ab + bottleneck_distance(b, c, 0)
