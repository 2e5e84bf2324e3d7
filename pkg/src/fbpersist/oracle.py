"""Brute-force ground truth for every computation mode.

Dimension 1 comes from the cone trick: contracting a vertex v adds the edge
[v+, v], and contracting an edge adds the triangle on it and v+. The
resulting filtered 2-complex is reduced with the textbook column algorithm.
Dimension 0 comes from recomputing the components of the quotient graph
after every step and applying the elder rule.

``module_rank_diagram`` is a third, independent path. It builds each
quotient space explicitly, computes the ranks of the induced maps on
homology, and reads the diagram off the rank invariant.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Any, Sequence

from .core import (
    INF,
    Filtration,
    FunctionTimeUndefined,
    Graph,
    HourglassSchedule,
    InputError,
    Permutation,
    PersistenceDiagram,
    PersistencePair,
)
from .filtration import intermediate_complexes


@dataclass(frozen=True)
class ResolvedStep:
    op: str  # "include" or "contract"
    vertices: tuple[int, ...]  # only what is new at this step
    edges: tuple[int, ...]
    value: Any = None
    shift: Any = None  # constant added to raise the contraction values above zero


@dataclass(frozen=True)
class Simplex:
    dim: int
    faces: tuple[int, ...]  # indices of boundary simplices (repeats cancel)
    step: int


@dataclass(frozen=True)
class ConedComplex:
    simplices: tuple[Simplex, ...]
    apex: int | None  # index of v+ among simplices, None without contraction


# --------------------------------------------------------------------------
# event sequences


def _resolve(graph: Graph, plan: Sequence[tuple[str, frozenset[int], frozenset[int], Any]]) -> list[ResolvedStep]:
    present_v: set[int] = set()
    present_e: set[int] = set()
    shrunk_v: set[int] = set()
    shrunk_e: set[int] = set()
    out = []
    for op, verts, edges, value in plan:
        if op == "include":
            nv, ne = verts - present_v, edges - present_e
            present_v |= nv
            present_e |= ne
        else:
            if not verts <= present_v or not edges <= present_e:
                raise InputError("contraction of simplices that are not present")
            nv, ne = verts - shrunk_v, edges - shrunk_e
            shrunk_v |= nv
            shrunk_e |= ne
        if nv or ne:
            out.append(ResolvedStep(op, tuple(sorted(nv)), tuple(sorted(ne)), value))
    return out


def _shift(values: list[Any]) -> Any:
    lo = min(values)
    return None if lo > 0 else 1 - lo


def resolve_events(
    graph: Graph,
    mode: str,
    f: Filtration,
    g: Filtration | None = None,
    sigma: Permutation | None = None,
    tau: Permutation | None = None,
    schedule: HourglassSchedule | None = None,
) -> tuple[list[ResolvedStep], bool]:
    """Return the step sequence of ``mode`` and whether function time is defined."""
    ics = intermediate_complexes(graph, f)
    lv = f.levels
    N = len(lv)
    fwd = [("include", ic.vertices, ic.edges, lv[i]) for i, ic in enumerate(ics)]

    if mode == "forward":
        return _resolve(graph, fwd), True
    if mode == "fb":
        back = [(ics[i].vertices, ics[i].edges, -lv[i]) for i in reversed(range(N))]
        return _finish(graph, fwd, back, lv), True
    if mode == "fg":
        if g is None:
            raise InputError("mode fg needs g")
        gics = intermediate_complexes(graph, g)
        back = [(ic.vertices, ic.edges, g.levels[k]) for k, ic in enumerate(gics)]
        return _finish(graph, fwd, back, lv), True
    if mode == "sigma_tau":
        if sigma is None or tau is None:
            raise InputError("mode sigma_tau needs sigma and tau")
        ahead = [("include", ics[sigma(k)].vertices, ics[sigma(k)].edges, lv[k]) for k in range(N)]
        back = [(ics[tau(k)].vertices, ics[tau(k)].edges, -lv[N - 1 - k]) for k in range(N)]
        return _finish(graph, ahead, back, lv), True
    if mode == "extended":
        back = []
        for a in reversed(lv):
            verts = frozenset(v for v in range(graph.n_vertices) if f.vertex_values[v] >= a)
            edges = frozenset(e for e, (u, w) in enumerate(graph.edges) if u in verts and w in verts)
            back.append((verts, edges, -a))
        return _finish(graph, fwd, back, lv), True
    if mode == "backward":
        whole = [("include", frozenset(range(graph.n_vertices)), frozenset(range(graph.n_edges)), None)]
        back = [(ics[i].vertices, ics[i].edges, None) for i in reversed(range(N))]
        plan = whole + [("contract", v, e, None) for v, e, _ in back]
        return _resolve(graph, plan), False
    if mode == "hourglass":
        if schedule is None:
            raise InputError("mode hourglass needs a schedule")
        plan = []
        for ev in schedule.events:
            if not 0 <= ev.ic < N:
                raise InputError(f"schedule index {ev.ic} out of range")
            plan.append((ev.op, ics[ev.ic].vertices, ics[ev.ic].edges, None))
        return _resolve(graph, plan), False
    raise InputError(f"unknown mode {mode!r}")


def _finish(graph: Graph, ahead: list, back: list, lv: Sequence[Any]) -> list[ResolvedStep]:
    steps_ahead = _resolve(graph, ahead)
    # contraction values are shifted over the steps that survive, as the engine does
    full = _resolve(graph, ahead + [("contract", v, e, x) for v, e, x in back])
    tail = full[len(steps_ahead) :]
    if tail:
        shift = _shift([s.value for s in tail])
        top = lv[-1] + (shift or 0)
        tail = [ResolvedStep(s.op, s.vertices, s.edges, top + s.value, shift) for s in tail]
    return steps_ahead + tail


# --------------------------------------------------------------------------
# cone and reduction


def build_cone(graph: Graph, events: Sequence[ResolvedStep]) -> ConedComplex:
    simplices: list[Simplex] = []
    vidx: dict[int, int] = {}
    eidx: dict[int, int] = {}
    cidx: dict[int, int] = {}
    apex: int | None = None
    for t, step in enumerate(events):
        if step.op == "include":
            for v in step.vertices:
                vidx[v] = len(simplices)
                simplices.append(Simplex(0, (), t))
            for e in step.edges:
                u, w = graph.edges[e]
                eidx[e] = len(simplices)
                simplices.append(Simplex(1, (vidx[u], vidx[w]), t))
        else:
            if apex is None:
                apex = len(simplices)
                simplices.append(Simplex(0, (), t))
            for v in step.vertices:
                cidx[v] = len(simplices)
                simplices.append(Simplex(1, (apex, vidx[v]), t))
            for e in step.edges:
                u, w = graph.edges[e]
                simplices.append(Simplex(2, (eidx[e], cidx[u], cidx[w]), t))
    return ConedComplex(tuple(simplices), apex)


def reduce_persistence(cx: ConedComplex) -> list[tuple[int, int, float | int]]:
    """Standard left-to-right reduction. Returns (dim, birth_step, death_step)."""
    simplices = cx.simplices
    columns: list[set[int]] = []
    for s in simplices:
        col: set[int] = set()
        for face in s.faces:
            col ^= {face}
        columns.append(col)
    low_owner: dict[int, int] = {}
    paired: set[int] = set()
    out = []
    for j, col in enumerate(columns):
        while col and max(col) in low_owner:
            col ^= columns[low_owner[max(col)]]
        columns[j] = col
        if col:
            i = max(col)
            low_owner[i] = j
            paired.update((i, j))
            out.append((simplices[i].dim, simplices[i].step, simplices[j].step))
    for i, s in enumerate(simplices):
        if i not in paired:
            out.append((s.dim, s.step, INF))
    return out


def _components(graph: Graph, present_v: set[int], present_e: set[int], shrunk: set[int]) -> dict[int, int]:
    """Label each present vertex by a component id of the quotient graph."""
    adj: dict[int, list[int]] = {v: [] for v in present_v}
    star = -1
    for e in present_e:
        u, w = graph.edges[e]
        a = star if u in shrunk else u
        b = star if w in shrunk else w
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if shrunk:
        adj.setdefault(star, [])
    label: dict[int, int] = {}
    for start in sorted(adj):
        if start in label:
            continue
        label[start] = start
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in label:
                    label[y] = start
                    queue.append(y)
    return {v: label[star if v in shrunk else v] for v in present_v}


def track_components(graph: Graph, events: Sequence[ResolvedStep]) -> list[tuple[int, int, float | int]]:
    """Dimension-0 pairs (0, birth_step, death_step) by per-step graph search."""
    present_v: set[int] = set()
    present_e: set[int] = set()
    shrunk: set[int] = set()
    alive: list[tuple[int, int]] = []  # (birth step, representative vertex)
    out = []
    for t, step in enumerate(events):
        if step.op == "include":
            present_v.update(step.vertices)
            present_e.update(step.edges)
            alive += [(t, v) for v in step.vertices]
        else:
            shrunk.update(step.vertices)
        label = _components(graph, present_v, present_e, shrunk)
        groups: dict[int, list[tuple[int, int]]] = {}
        for bar in alive:
            groups.setdefault(label[bar[1]], []).append(bar)
        alive = []
        for bars in groups.values():
            bars.sort()  # eldest survives
            alive.append(bars[0])
            out += [(0, b, t) for b, _ in bars[1:]]
    out += [(0, b, INF) for b, _ in alive]
    return out


def oracle_diagram(
    graph: Graph,
    mode: str,
    f: Filtration,
    g: Filtration | None = None,
    sigma: Permutation | None = None,
    tau: Permutation | None = None,
    schedule: HourglassSchedule | None = None,
    function_time: bool | None = None,
) -> PersistenceDiagram:
    """Oracle diagram; function time is attached whenever the mode defines it
    unless ``function_time`` is False, and requesting it otherwise is an error."""
    events, has_values = resolve_events(graph, mode, f, g, sigma, tau, schedule)
    if function_time and not has_values:
        raise FunctionTimeUndefined(f"function time is not defined for mode {mode}")
    pairs0 = track_components(graph, events)
    pairs1 = [p for p in reduce_persistence(build_cone(graph, events)) if p[0] == 1]
    use_values = has_values and function_time is not False
    pairs = []
    for dim, b, d in pairs0 + pairs1:
        if use_values:
            dv = INF if d == INF else events[d].value
            pairs.append(PersistencePair(dim, b, d, events[b].value, dv))
        else:
            pairs.append(PersistencePair(dim, b, d))
    shift = next((s.shift for s in events if s.op == "contract"), None) if use_values else None
    return PersistenceDiagram(tuple(pairs), mode, g_shift=shift)


# --------------------------------------------------------------------------
# rank-invariant oracle


def _f2_rank(vectors: list[int]) -> int:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def module_rank_diagram(graph: Graph, events: Sequence[ResolvedStep], mode: str = "hourglass") -> PersistenceDiagram:
    """Diagram of nonzero-length pairs from ranks of the maps between spaces."""
    T = len(events)
    spaces = []
    pv: set[int] = set()
    pe: set[int] = set()
    sv: set[int] = set()
    se: set[int] = set()
    for step in events:
        if step.op == "include":
            pv |= set(step.vertices)
            pe |= set(step.edges)
        else:
            sv |= set(step.vertices)
            se |= set(step.edges)
        spaces.append((frozenset(pv), frozenset(pe), frozenset(sv), frozenset(se)))

    def cycles(space) -> list[int]:
        verts, edges, shrunk, gone = space
        parent = {v: v for v in verts}
        parent[-1] = -1

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        tree_adj: dict[int, list[tuple[int, int]]] = {}
        extra = []
        for e in sorted(edges - gone):
            u, w = graph.edges[e]
            a = -1 if u in shrunk else u
            b = -1 if w in shrunk else w
            ra, rb = find(a), find(b)
            if ra == rb:
                extra.append((e, a, b))
            else:
                parent[ra] = rb
                tree_adj.setdefault(a, []).append((b, e))
                tree_adj.setdefault(b, []).append((a, e))
        out = []
        for e, a, b in extra:
            # path a -> b in the forest by search
            prev: dict[int, tuple[int, int]] = {a: (a, -1)}
            queue = deque([a])
            while queue:
                x = queue.popleft()
                for y, k in tree_adj.get(x, []):
                    if y not in prev:
                        prev[y] = (x, k)
                        queue.append(y)
            vec = 1 << e
            x = b
            while x != a:
                x, k = prev[x]
                vec ^= 1 << k
            out.append(vec)
        return out

    def comp_reps(space) -> list[int]:
        verts, edges, shrunk, _ = space
        label = _components(graph, set(verts), set(edges), set(shrunk))
        reps: dict[int, int] = {}
        for v in sorted(verts):
            reps.setdefault(label[v], v)
        return list(reps.values())

    basis1 = [cycles(s) for s in spaces]
    reps0 = [comp_reps(s) for s in spaces]
    labels = [_components(graph, set(s[0]), set(s[1]), set(s[2])) for s in spaces]

    def rank(dim: int, i: int, j: int) -> int:
        if i < 0:
            return 0
        if dim == 1:
            gone = spaces[j][3]
            mask = 0
            for e in gone:
                mask |= 1 << e
            return _f2_rank([z & ~mask for z in basis1[i]])
        return len({labels[j][v] for v in reps0[i]})

    pairs = []
    for dim in (0, 1):
        for b in range(T):
            for d in range(b + 1, T):
                mult = rank(dim, b, d - 1) - rank(dim, b, d) - rank(dim, b - 1, d - 1) + rank(dim, b - 1, d)
                pairs += [PersistencePair(dim, b, d)] * mult
            mult = rank(dim, b, T - 1) - rank(dim, b - 1, T - 1)
            pairs += [PersistencePair(dim, b, INF)] * mult
    return PersistenceDiagram(tuple(pairs), mode, keep_zero_length=False)


def births_per_step(diagram: PersistenceDiagram) -> Counter:
    return Counter(p.birth_step for p in diagram.pairs)
