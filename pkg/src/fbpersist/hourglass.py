"""Interleaved include/contract schedules over intermediate complexes."""

from __future__ import annotations

from .core import (
    Contract,
    ContractBeforeInclude,
    DuplicateInclude,
    Filtration,
    FunctionTimeUndefined,
    Graph,
    HourglassSchedule,
    Include,
    Permutation,
    PersistenceDiagram,
    PersistencePair,
    ScheduleError,
    UnknownIndex,
)
from .filtration import intermediate_complexes
from .oracle import build_cone, reduce_persistence, resolve_events, track_components


def validate_schedule(graph: Graph, f: Filtration, schedule: HourglassSchedule) -> None:
    n_levels = len(f.levels)
    included: set[int] = set()
    contracted: set[int] = set()
    for k, ev in enumerate(schedule.events):
        if not 0 <= ev.ic < n_levels:
            raise UnknownIndex(f"event {k}: no intermediate complex {ev.ic} (have 0..{n_levels - 1})")
        if ev.op == "include":
            if ev.ic in included:
                raise DuplicateInclude(f"event {k}: complex {ev.ic} included twice")
            included.add(ev.ic)
        else:
            if ev.ic not in included:
                raise ContractBeforeInclude(f"event {k}: complex {ev.ic} contracted before it was included")
            if ev.ic in contracted:
                raise ScheduleError(f"event {k}: complex {ev.ic} contracted twice")
            contracted.add(ev.ic)
    missing = sorted(set(range(n_levels)) - included)
    if missing:
        raise ScheduleError(f"complexes {missing} are never included")


def hourglass_persistence(
    graph: Graph, f: Filtration, schedule: HourglassSchedule, function_time: bool = False
) -> PersistenceDiagram:
    """Combinatorial-time diagram of an arbitrary valid schedule."""
    if function_time:
        raise FunctionTimeUndefined("function time is not defined for hourglass schedules")
    validate_schedule(graph, f, schedule)
    events, _ = resolve_events(graph, "hourglass", f, schedule=schedule)
    pairs = [PersistencePair(*p) for p in track_components(graph, events)]
    pairs += [PersistencePair(*p) for p in reduce_persistence(build_cone(graph, events)) if p[0] == 1]
    return PersistenceDiagram(tuple(pairs), "hourglass")


def sequential_schedule(sigma: Permutation, tau: Permutation) -> HourglassSchedule:
    """All includes in sigma order, then all contractions in tau order."""
    return HourglassSchedule(
        tuple(Include(sigma(k)) for k in range(len(sigma))) + tuple(Contract(tau(k)) for k in range(len(tau)))
    )


def threshold_schedule(graph: Graph, f: Filtration, d: int) -> tuple[HourglassSchedule, int]:
    """Include complexes in order and contract everything pending once the live
    space holds more than ``d`` cells. Returns the schedule and its peak size."""
    ics = intermediate_complexes(graph, f)
    present_v: set[int] = set()
    present_e: set[int] = set()
    shrunk_v: set[int] = set()
    shrunk_e: set[int] = set()
    events = []
    pending: list[int] = []
    peak = 0

    def live() -> int:
        star = 1 if shrunk_v else 0
        return len(present_v - shrunk_v) + len(present_e - shrunk_e) + star

    def flush() -> None:
        for j in pending:
            events.append(Contract(j))
            shrunk_v.update(ics[j].vertices)
            shrunk_e.update(ics[j].edges)
        pending.clear()

    for ic in ics:
        events.append(Include(ic.index))
        present_v.update(ic.vertices)
        present_e.update(ic.edges)
        pending.append(ic.index)
        peak = max(peak, live())
        if live() > d:
            flush()
    flush()
    return HourglassSchedule(tuple(events)), peak
