"""Contraction after a forward pass, and the pipelines built from it.

Contracting a vertex either merges its component into the supernode region
(a dimension-0 death, elder rule) or, when it was already connected to that
region, opens a supernode cycle. Contracting an edge kills exactly one
dimension-1 class. It is a forward cycle when the edge closes a loop of
previously contracted edges. Otherwise it is a supernode cycle.

Which forward cycle dies is decided by one F2 reduction of the forward
basis with rows ordered by contraction time: the column whose pivot is the
edge being contracted is the one that has just become dependent. Which
supernode cycle dies is decided by the elder rule on the pieces of the
contracted-edge graph, each dated by the step its first vertex entered the
supernode.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any, Sequence

from . import _kernels
from .core import (
    INF,
    EdgeBeforeEndpoint,
    Filtration,
    Graph,
    Permutation,
    PersistenceDiagram,
    PersistencePair,
    StackUnderflow,
)
from .filtration import (
    StepGroup,
    backward_filtration,
    descending_schedule,
    groups_from_filtration,
    groups_from_ics,
    shift_to_positive,
    sigma_forward_filtration,
    tau_backward_filtration,
)
from .forward import ForwardResult, forward_from_groups


@dataclass(frozen=True)
class BackwardState:
    supernode_members: frozenset[int]
    supernode_stack: tuple[int, ...]  # birth steps of supernode cycles still open
    pending_list: tuple[tuple[int, int], ...]  # closed supernode intervals (birth, death)


def validate_contraction(graph: Graph, groups: Sequence[StepGroup]) -> None:
    seen_v = [False] * graph.n_vertices
    seen_e = [False] * graph.n_edges
    for grp in groups:
        for v in grp.vertices:
            if seen_v[v]:
                raise EdgeBeforeEndpoint(f"vertex {v} is contracted twice")
            seen_v[v] = True
        for e in grp.edges:
            u, w = graph.edges[e]
            if seen_e[e]:
                raise EdgeBeforeEndpoint(f"edge {e} is contracted twice")
            if not (seen_v[u] and seen_v[w]):
                raise EdgeBeforeEndpoint(f"edge {e} is contracted before its endpoints")
            seen_e[e] = True
    if not (all(seen_v) and all(seen_e)):
        raise EdgeBeforeEndpoint("the contraction order must cover every vertex and edge")


def backward_contraction(
    graph: Graph, fwd: ForwardResult, groups: Sequence[StepGroup]
) -> tuple[list[PersistencePair], list[PersistencePair], BackwardState]:
    """Run the contraction groups after ``fwd``; group k sits at step last_step+1+k.

    Returns the full dimension-0 and dimension-1 pair lists (forward pairs
    included, closed where contraction killed them) and the final state.
    Pair values are left empty; callers attach function time.
    """
    validate_contraction(graph, groups)
    kern = _kernels.active()
    base = fwd.last_step + 1
    kinds: list[int] = []
    ids: list[int] = []
    steps: list[int] = []
    erank = [-1] * graph.n_edges
    for k, grp in enumerate(groups):
        for v in grp.vertices:
            kinds.append(0)
            ids.append(v)
            steps.append(base + k)
        for e in grp.edges:
            erank[e] = len(kinds)
            kinds.append(1)
            ids.append(e)
            steps.append(base + k)

    cols = fwd.basis.columns
    ptr = [0]
    rows: list[int] = []
    for col in cols:
        rows.extend(erank[e] for e in col.edges)
        ptr.append(len(rows))
    lows = kern.gf2_reduce(len(kinds), ptr, rows)
    low_col = [-1] * graph.n_edges
    for c, low in enumerate(lows):
        if low < 0:
            raise StackUnderflow("forward cycle basis is not independent")
        low_col[ids[low]] = c

    uf = fwd.uf
    etype, evalue = kern.contract_pass(
        graph.n_vertices,
        list(uf.parent),
        list(uf.birth_step),
        kinds,
        ids,
        steps,
        [u for u, _ in graph.edges],
        [w for _, w in graph.edges],
        low_col,
    )

    comp_death: dict[int, int] = {}
    col_death: dict[int, int] = {}
    open_sn: Counter = Counter()
    closed_sn: list[tuple[int, int]] = []
    for k, t in enumerate(etype):
        s = steps[k]
        if t == _kernels.COMPONENT_DEATH:
            comp_death[evalue[k]] = s
        elif t == _kernels.SUPERNODE_BIRTH:
            open_sn[s] += 1
        elif t == _kernels.FORWARD_DEATH:
            col_death[evalue[k]] = s
        elif t == _kernels.SUPERNODE_DEATH:
            b = evalue[k]
            if open_sn[b] <= 0:
                raise StackUnderflow(f"supernode cycle born at step {b} closed at step {s} was never opened")
            open_sn[b] -= 1
            closed_sn.append((b, s))

    pd0 = [PersistencePair(0, p.birth_step, p.death_step) for p in fwd.pd0 if not p.essential]
    for b in sorted(set(uf.parent)):
        pd0.append(PersistencePair(0, uf.birth_step[b], comp_death.get(b, INF)))
    pd1 = [PersistencePair(1, col.birth_step, col_death.get(c, INF)) for c, col in enumerate(cols)]
    pd1 += [PersistencePair(1, b, d) for b, d in closed_sn]
    for b, cnt in sorted(open_sn.items()):
        pd1 += [PersistencePair(1, b, INF)] * cnt

    members = frozenset(v for grp in groups for v in grp.vertices)
    stack = tuple(b for b, cnt in sorted(open_sn.items()) for _ in range(cnt))
    return pd0, pd1, BackwardState(members, stack, tuple(closed_sn))


# --------------------------------------------------------------------------
# pipelines


def _with_values(pairs: Sequence[PersistencePair], step_values: Sequence[Any] | None) -> list[PersistencePair]:
    if step_values is None:
        return list(pairs)
    out = []
    for p in pairs:
        d = INF if p.essential else step_values[p.death_step]
        out.append(PersistencePair(p.dim, p.birth_step, p.death_step, step_values[p.birth_step], d))
    return out


def contraction_values(f_max: Any, g_values: Sequence[Any]) -> tuple[list[Any], Any]:
    """Function time of contraction steps: max(f) plus the (shifted) g value."""
    shift = shift_to_positive(g_values) if g_values else None
    return [f_max + (x if shift is None else x + shift) for x in g_values], shift


def run_pipeline(
    graph: Graph,
    fgroups: Sequence[StepGroup],
    cgroups: Sequence[StepGroup],
    mode: str,
    function_time: bool = True,
    keep_zero_length: bool = True,
    f_max: Any = None,
) -> PersistenceDiagram:
    fwd = forward_from_groups(graph, fgroups)
    pd0, pd1, _ = backward_contraction(graph, fwd, cgroups)
    step_values = None
    shift = None
    if function_time and fgroups:
        top = fwd.step_values[-1] if f_max is None else f_max
        cvals, shift = contraction_values(top, [g.value for g in cgroups])
        step_values = list(fwd.step_values) + cvals
    pairs = _with_values(pd0 + pd1, step_values)
    return PersistenceDiagram(tuple(pairs), mode, keep_zero_length, shift)


def fg_persistence(
    graph: Graph, f: Filtration, g: Filtration, *, mode: str = "fg", f_max: Any = None
) -> PersistenceDiagram:
    fgroups = groups_from_filtration(graph, f)
    return run_pipeline(graph, fgroups, groups_from_filtration(graph, g), mode, f_max=f_max)


def fb_persistence(graph: Graph, f: Filtration) -> PersistenceDiagram:
    return fg_persistence(graph, f, backward_filtration(graph, f), mode="fb")


def sigma_tau_persistence(graph: Graph, f: Filtration, sigma: Permutation, tau: Permutation) -> PersistenceDiagram:
    f1 = sigma_forward_filtration(graph, f, sigma)
    f2 = tau_backward_filtration(graph, f, tau.inverse())
    # f1 can skip the top levels of f, so contraction time is anchored at max f itself
    return fg_persistence(graph, f1, f2, mode="sigma_tau", f_max=f.max_value())


def backward_only(graph: Graph, f: Filtration) -> PersistenceDiagram:
    """Contraction sequence alone: the whole graph appears at step 0."""
    whole = [StepGroup(tuple(range(graph.n_vertices)), tuple(range(graph.n_edges)), None)]
    cgroups = groups_from_filtration(graph, backward_filtration(graph, f))
    return run_pipeline(graph, whole, cgroups, "backward", function_time=False)


def extended_fb(graph: Graph, f: Filtration) -> PersistenceDiagram:
    ics = descending_schedule(graph, f)
    cgroups = groups_from_ics(ics, [-a for a in reversed(f.levels)])
    return run_pipeline(graph, groups_from_filtration(graph, f), cgroups, "extended")


def ff_shortcut(graph: Graph, f: Filtration) -> PersistenceDiagram:
    """(f, f) persistence read off the forward pass alone.

    A forward cycle born at step i dies when level i is contracted, at
    n+1+i. A component born at i that merged at j leaves a supernode cycle
    (n+1+i, n+1+j). Essential components die when their first vertex is
    contracted, except the oldest.
    """
    fwd = forward_from_groups(graph, groups_from_filtration(graph, f))
    base = fwd.last_step + 1
    pairs: list[PersistencePair] = []
    essential = sorted((p.birth_step for p in fwd.pd0 if p.essential))
    for p in fwd.pd0:
        if not p.essential:
            pairs.append(PersistencePair(0, p.birth_step, p.death_step))
            pairs.append(PersistencePair(1, base + p.birth_step, base + p.death_step))
    for k, b in enumerate(essential):
        pairs.append(PersistencePair(0, b, INF if k == 0 else base + b))
    for p in fwd.pd1:
        pairs.append(PersistencePair(1, p.birth_step, base + p.birth_step))
    cvals, shift = contraction_values(f.max_value(), list(f.levels)) if f.levels else ([], None)
    step_values = list(fwd.step_values) + cvals
    return PersistenceDiagram(tuple(_with_values(pairs, step_values)), "fg", True, shift)


# --------------------------------------------------------------------------
# recovery maps


def recover_forward(fb: PersistenceDiagram, last_forward_step: int) -> PersistenceDiagram:
    n = last_forward_step
    out = []
    for p in fb.pairs:
        if p.birth_step > n:
            continue
        if p.death_step <= n:
            out.append(p)
        else:
            bv = p.birth_value
            out.append(PersistencePair(p.dim, p.birth_step, INF, bv, None if bv is None else INF))
    return PersistenceDiagram(tuple(out), "forward", fb.keep_zero_length)


def recover_backward(fb: PersistenceDiagram, last_forward_step: int) -> PersistenceDiagram:
    """Contraction-phase pairs re-indexed as a standalone contraction sequence.

    Births inside the forward phase collapse to step 0; contraction steps
    n+k become k. Step time only.
    """
    n = last_forward_step
    out = []
    for p in fb.pairs:
        if p.death_step <= n:
            continue
        b = 0 if p.birth_step <= n else p.birth_step - n
        d = INF if p.essential else p.death_step - n
        out.append(PersistencePair(p.dim, b, d))
    return PersistenceDiagram(tuple(out), "backward", fb.keep_zero_length)
