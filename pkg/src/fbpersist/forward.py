"""Streaming forward persistence of a graph filtration.

Union-find with the elder rule gives dimension 0. Every edge that closes a
cycle opens a dimension-1 class whose representative is the edge plus the
spanning-forest path between its endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

from . import _kernels
from .core import INF, Filtration, Graph, PersistencePair
from .filtration import StepGroup, groups_from_filtration


def bits_to_int(positions: Sequence[int], nbits: int) -> int:
    buf = bytearray((nbits + 7) // 8)
    for p in positions:
        buf[p >> 3] ^= 1 << (p & 7)
    return int.from_bytes(buf, "little")


@dataclass(frozen=True)
class CycleColumn:
    birth_step: int
    birth_value: Any
    creating_edge: int
    edges: tuple[int, ...]  # support: the creating edge, then its forest path
    n_edges: int = field(repr=False)

    @cached_property
    def indicator(self) -> int:
        """Bit vector over edge ids (bit e set iff edge e is in the cycle)."""
        return bits_to_int(self.edges, self.n_edges)


@dataclass(frozen=True)
class CycleBasis:
    columns: tuple[CycleColumn, ...]

    def __len__(self) -> int:
        return len(self.columns)

    def is_echelon(self) -> bool:
        seen = 0
        for col in self.columns:
            if not col.indicator >> col.creating_edge & 1:
                return False
            if seen >> col.creating_edge & 1:
                return False
            seen |= col.indicator
        return True


@dataclass(frozen=True)
class UnionFindState:
    parent: tuple[int, ...]  # fully compressed: every vertex points at its component's birth vertex
    birth_step: tuple[int, ...]  # per vertex
    birth_value: tuple[Any, ...]
    forest_edges: tuple[int, ...]
    graph: Graph = field(repr=False)

    def find(self, v: int) -> int:
        return self.parent[v]

    @property
    def roots(self) -> list[int]:
        return sorted(set(self.parent))

    @cached_property
    def forest_adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(self.graph.n_vertices)}
        for e in self.forest_edges:
            u, v = self.graph.edges[e]
            adj[u].append(v)
            adj[v].append(u)
        return adj


@dataclass(frozen=True)
class ForwardResult:
    pd0: tuple[PersistencePair, ...]  # essential components carry death INF
    pd1: tuple[PersistencePair, ...]  # all open
    basis: CycleBasis
    uf: UnionFindState
    last_step: int
    step_values: tuple[Any, ...]


def forward_inclusion(graph: Graph, f: Filtration) -> ForwardResult:
    return forward_from_groups(graph, groups_from_filtration(graph, f))


def forward_from_groups(graph: Graph, groups: Sequence[StepGroup]) -> ForwardResult:
    kern = _kernels.active()
    n, m = graph.n_vertices, graph.n_edges
    vstep = [0] * n
    rank = [0] * n
    estep = [0] * m
    order: list[int] = []
    r = 0
    for s, grp in enumerate(groups):
        for v in grp.vertices:
            vstep[v] = s
            rank[v] = r
            r += 1
        for e in grp.edges:
            estep[e] = s
            order.append(e)
    values = tuple(g.value for g in groups)
    eu = [graph.edges[e][0] for e in order]
    ev = [graph.edges[e][1] for e in order]
    killed, comp = kern.forward_union_find(n, rank, eu, ev)

    pd0: list[PersistencePair] = []
    forest: list[int] = []
    cycles: list[int] = []
    for k, e in enumerate(order):
        y = killed[k]
        if y < 0:
            cycles.append(e)
            continue
        forest.append(e)
        s = estep[e]
        pd0.append(PersistencePair(0, vstep[y], s, values[vstep[y]], values[s]))
    for b in sorted(set(comp)):
        pd0.append(PersistencePair(0, vstep[b], INF, values[vstep[b]], INF))

    ptr, idx = kern.tree_paths(
        n,
        [graph.edges[e][0] for e in forest],
        [graph.edges[e][1] for e in forest],
        [graph.edges[e][0] for e in cycles],
        [graph.edges[e][1] for e in cycles],
    )
    columns = []
    pd1 = []
    for q, e in enumerate(cycles):
        s = estep[e]
        support = (e,) + tuple(forest[i] for i in idx[ptr[q] : ptr[q + 1]])
        columns.append(CycleColumn(s, values[s], e, support, m))
        pd1.append(PersistencePair(1, s, INF, values[s], INF))

    uf = UnionFindState(
        tuple(comp),
        tuple(vstep),
        tuple(values[s] for s in vstep),
        tuple(forest),
        graph,
    )
    return ForwardResult(tuple(pd0), tuple(pd1), CycleBasis(tuple(columns)), uf, len(groups) - 1, values)
