"""Sublevel structure, intermediate complexes and filtration transforms.

The transforms turn a vertex-based filtration into another filtration whose
sublevel order includes (or contracts) the intermediate complexes of the
original in a prescribed order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .core import (
    Filtration,
    Graph,
    IntermediateComplex,
    NotAPermutation,
    NotVertexBased,
    Permutation,
)


@dataclass(frozen=True)
class FiltrationSteps:
    subgraphs: tuple[tuple[frozenset[int], frozenset[int]], ...]


@dataclass(frozen=True)
class StepGroup:
    """Simplices that enter (or get contracted) together at one step.

    Only simplices that are new at this step are listed, vertices and edges
    each in ascending id order. ``value`` is the function value of the step.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    value: Any = None


def sublevel_steps(graph: Graph, f: Filtration) -> FiltrationSteps:
    out = []
    for a in f.levels:
        verts = frozenset(v for v in range(graph.n_vertices) if f.vertex_values[v] <= a)
        edges = frozenset(e for e in range(graph.n_edges) if f.edge_values[e] <= a)
        out.append((verts, edges))
    return FiltrationSteps(tuple(out))


def intermediate_complexes(graph: Graph, f: Filtration) -> list[IntermediateComplex]:
    verts: list[set[int]] = [set() for _ in f.levels]
    edges: list[set[int]] = [set() for _ in f.levels]
    for v in range(graph.n_vertices):
        verts[f.vertex_step(v)].add(v)
    for e, (u, v) in enumerate(graph.edges):
        i = f.edge_step(e)
        edges[i].add(e)
        verts[i].update((u, v))
    return [IntermediateComplex(i, frozenset(verts[i]), frozenset(edges[i])) for i in range(len(f.levels))]


def groups_from_ics(ics: Sequence[IntermediateComplex], values: Sequence[Any] | None = None) -> list[StepGroup]:
    """Turn an ordered IC list into step groups, dropping steps that add nothing."""
    seen_v: set[int] = set()
    seen_e: set[int] = set()
    out = []
    for k, ic in enumerate(ics):
        new_v = tuple(sorted(ic.vertices - seen_v))
        new_e = tuple(sorted(ic.edges - seen_e))
        if not new_v and not new_e:
            continue
        seen_v.update(new_v)
        seen_e.update(new_e)
        out.append(StepGroup(new_v, new_e, None if values is None else values[k]))
    return out


def groups_from_filtration(graph: Graph, f: Filtration) -> list[StepGroup]:
    """Sublevel steps of ``f`` as groups; every level adds at least one simplex."""
    verts: list[list[int]] = [[] for _ in f.levels]
    edges: list[list[int]] = [[] for _ in f.levels]
    for v in range(graph.n_vertices):
        verts[f.vertex_step(v)].append(v)
    for e in range(graph.n_edges):
        edges[f.edge_step(e)].append(e)
    return [StepGroup(tuple(verts[i]), tuple(edges[i]), a) for i, a in enumerate(f.levels)]


def _require_vertex_based(graph: Graph, f: Filtration) -> None:
    if not f.is_vertex_based(graph):
        raise NotVertexBased("this transform needs a vertex-based filtration (edge value = max of endpoints)")


def _star_max(graph: Graph, vertex_values: Sequence[Any], edge_values: Sequence[Any]) -> list[Any]:
    # Each vertex takes the max over itself and its incident edges. Both
    # endpoints are updated; a vertex with no edges keeps its own value.
    out = list(vertex_values)
    for e, (u, v) in enumerate(graph.edges):
        x = edge_values[e]
        if x > out[u]:
            out[u] = x
        if x > out[v]:
            out[v] = x
    return out


def backward_filtration(graph: Graph, f: Filtration) -> Filtration:
    # one pass: the vertex-based check and the star max share the edge loop
    vv = f.vertex_values
    top = list(vv)
    neg_edges = []
    for (u, v), x in zip(graph.edges, f.edge_values):
        a, b = vv[u], vv[v]
        if x != (a if a > b else b):
            raise NotVertexBased("this transform needs a vertex-based filtration (edge value = max of endpoints)")
        if x > top[u]:
            top[u] = x
        if x > top[v]:
            top[v] = x
        neg_edges.append(-x)
    return Filtration(tuple([-x for x in top]), tuple(neg_edges))


def permute_filtration(f: Filtration, sigma: Permutation) -> Filtration:
    if len(sigma) != len(f.levels):
        raise NotAPermutation(f"permutation has size {len(sigma)}, filtration has {len(f.levels)} levels")
    lv = f.levels
    relabel = {a: lv[sigma(i)] for i, a in enumerate(lv)}
    return Filtration(
        tuple(relabel[x] for x in f.vertex_values),
        tuple(relabel[x] for x in f.edge_values),
        ordering_only=True,
    )


def tau_backward_filtration(graph: Graph, f: Filtration, tau_inv: Permutation) -> Filtration:
    """Filtration whose sublevel order contracts IC_tau(0), IC_tau(1), ... of ``f``."""
    _require_vertex_based(graph, f)
    n = len(f.levels)
    if len(tau_inv) != n:
        raise NotAPermutation(f"permutation has size {len(tau_inv)}, filtration has {n} levels")
    g = permute_filtration(f, Permutation.reverse(n).compose(tau_inv))
    top = _star_max(graph, g.vertex_values, g.edge_values)
    return Filtration(tuple(-x for x in top), tuple(-x for x in g.edge_values))


def sigma_forward_filtration(graph: Graph, f: Filtration, sigma: Permutation) -> Filtration:
    """Filtration whose sublevel order includes IC_sigma(0), IC_sigma(1), ... of ``f``.

    The order comes from ``tau_backward_filtration``; its k-th level is then
    relabelled to the k-th level of ``f`` so values stay those of ``f``.
    For the identity permutation this returns ``f`` itself.
    """
    ordered = tau_backward_filtration(graph, f, sigma.inverse())
    n = len(f.levels)
    # level -a_{n-1-p} of the ordered filtration sits at position p
    relabel = {-f.levels[n - 1 - p]: f.levels[p] for p in range(n)}
    return Filtration(
        tuple(relabel[x] for x in ordered.vertex_values),
        tuple(relabel[x] for x in ordered.edge_values),
    )


def descending_schedule(graph: Graph, f: Filtration) -> list[IntermediateComplex]:
    """Superlevel descent of a vertex-based ``f``, one group per level from the top.

    The group for level a holds the vertices valued a and the edges whose
    lower endpoint is valued a, so the union of the first groups is the full
    subgraph on vertices valued at least a. Endpoints are listed for closure.
    """
    n = len(f.levels)
    verts: list[set[int]] = [set() for _ in range(n)]
    edges: list[set[int]] = [set() for _ in range(n)]
    vv = f.vertex_values
    for v in range(graph.n_vertices):
        verts[n - 1 - f.step_of[vv[v]]].add(v)
    for e, (u, v) in enumerate(graph.edges):
        k = n - 1 - f.step_of[min(vv[u], vv[v])]
        edges[k].add(e)
        verts[k].update((u, v))
    return [IntermediateComplex(k, frozenset(verts[k]), frozenset(edges[k])) for k in range(n)]


def shift_to_positive(values: Sequence[Any]) -> Any:
    """Constant to add so the smallest value becomes 1, or None when all are positive."""
    lo = min(values)
    return None if lo > 0 else 1 - lo
