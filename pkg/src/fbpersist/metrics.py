"""Bottleneck distances between persistence diagrams in function time."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .core import INF, EssentialCountMismatch, MissingFunctionTime, PersistenceDiagram

Point = tuple[Any, Any]


def _half(x: Any) -> Any:
    return x / 2 if isinstance(x, float) else Fraction(x) / 2


def _normalize(x: Any) -> Any:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _points(diagram: PersistenceDiagram, dim: int) -> tuple[list[Point], list[Any]]:
    finite, essential = [], []
    for p in diagram.pairs:
        if p.dim != dim:
            continue
        if p.birth_value is None or p.death_value is None:
            raise MissingFunctionTime("bottleneck distance needs function-time values")
        if p.death_value == INF:
            essential.append(p.birth_value)
        else:
            finite.append((p.birth_value, p.death_value))
    return finite, essential


def _feasible(dist: list[list[Any]], half_a: list[Any], half_b: list[Any], r: Any) -> bool:
    # rows: points of a, then diagonal copies for b; columns: points of b, then diagonal copies for a
    k1, k2 = len(half_a), len(half_b)
    size = k1 + k2
    if size == 0:
        return True
    rows, cols = [], []
    for i in range(k1):
        row = dist[i]
        for j in range(k2):
            if row[j] <= r:
                rows.append(i)
                cols.append(j)
        if half_a[i] <= r:
            rows.append(i)
            cols.append(k2 + i)
    for j in range(k2):
        if half_b[j] <= r:
            rows.append(k1 + j)
            cols.append(j)
        rows.extend([k1 + j] * k1)
        cols.extend(range(k2, k2 + k1))
    mat = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    match = maximum_bipartite_matching(mat, perm_type="column")
    return bool((match >= 0).all())


def finite_bottleneck(a: Sequence[Point], b: Sequence[Point]) -> Any:
    """Exact bottleneck distance between two finite point multisets."""
    dist = [[max(abs(x0 - y0), abs(x1 - y1)) for y0, y1 in b] for x0, x1 in a]
    half_a = [_half(x1 - x0) for x0, x1 in a]
    half_b = [_half(y1 - y0) for y0, y1 in b]
    ordered = sorted({0, *half_a, *half_b, *(d for row in dist for d in row)})
    lo, hi = 0, len(ordered) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(dist, half_a, half_b, ordered[mid]):
            hi = mid
        else:
            lo = mid + 1
    return _normalize(ordered[lo])


def _essential_cost(e1: list[Any], e2: list[Any]) -> Any:
    if len(e1) != len(e2):
        return INF
    return max((abs(x - y) for x, y in zip(sorted(e1), sorted(e2))), default=0)


def bottleneck_distance(d1: PersistenceDiagram, d2: PersistenceDiagram, dim: int) -> Any:
    f1, e1 = _points(d1, dim)
    f2, e2 = _points(d2, dim)
    cost = _essential_cost(e1, e2)
    if cost == INF:
        return INF
    return _normalize(max(cost, finite_bottleneck(f1, f2)))


def bottleneck_excluding_essential(d1: PersistenceDiagram, d2: PersistenceDiagram, dim: int = 0) -> Any:
    f1, e1 = _points(d1, dim)
    f2, e2 = _points(d2, dim)
    if len(e1) != 1 or len(e2) != 1:
        raise EssentialCountMismatch(
            f"expected exactly one essential pair in each diagram, got {len(e1)} and {len(e2)}"
        )
    return finite_bottleneck(f1, f2)
