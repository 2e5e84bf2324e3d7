"""Domain types shared across the package.

Graphs are finite undirected multigraphs (self-loops allowed) with integer
vertex and edge ids. A filtration assigns an ordered value to every vertex
and edge with each edge no lower than its endpoints. Diagrams are multisets
of persistence pairs carrying combinatorial steps and, when defined,
function values.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Any, Iterable, Iterator, Mapping, Sequence

INF = math.inf

MODES = ("forward", "backward", "fb", "fg", "sigma_tau", "extended", "hourglass")


# --------------------------------------------------------------------------
# errors


class PHError(Exception):
    """Base class for every error raised by the package."""


class InputError(PHError, ValueError):
    """Invalid user input. Carries a list of human-readable problems."""

    def __init__(self, message: str, problems: Sequence[str] | None = None):
        super().__init__(message)
        self.problems = list(problems) if problems else [message]


class GraphError(InputError):
    pass


class MissingValue(InputError):
    pass


class MonotonicityViolation(InputError):
    def __init__(self, edge_id: int, message: str | None = None, problems=None):
        self.edge_id = edge_id
        super().__init__(message or f"edge {edge_id} is valued below an endpoint", problems)


class NotVertexBased(InputError):
    pass


class NotAPermutation(InputError):
    pass


class ScheduleError(InputError):
    pass


class DuplicateInclude(ScheduleError):
    pass


class ContractBeforeInclude(ScheduleError):
    pass


class UnknownIndex(ScheduleError):
    pass


class EdgeBeforeEndpoint(ScheduleError):
    pass


class MissingFunctionTime(InputError):
    pass


class EssentialCountMismatch(InputError):
    pass


class FunctionTimeUndefined(InputError):
    pass


class StackUnderflow(PHError, RuntimeError):
    """Internal bookkeeping broke: a supernode cycle died with none open."""


# --------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n_vertices, "edges": [[u, v] for u, v in self.edges]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Graph":
        if not isinstance(data, Mapping) or "n" not in data:
            raise GraphError("graph JSON needs an 'n' field")
        return validate_graph(data["n"], data.get("edges", []))


def validate_graph(n_vertices: Any, edges: Iterable[Sequence[Any]]) -> Graph:
    problems: list[str] = []
    if isinstance(n_vertices, bool) or not isinstance(n_vertices, int):
        raise GraphError(f"vertex count must be an integer, got {n_vertices!r}")
    if n_vertices < 0:
        raise GraphError(f"negative vertex count {n_vertices}")
    clean: list[tuple[int, int]] = []
    for e, pair in enumerate(edges):
        try:
            u, v = pair
        except (TypeError, ValueError):
            problems.append(f"edge {e}: expected a pair, got {pair!r}")
            continue
        bad = False
        for x in (u, v):
            if isinstance(x, bool) or not isinstance(x, int):
                problems.append(f"edge {e}: endpoint {x!r} is not an integer")
                bad = True
            elif not 0 <= x < n_vertices:
                problems.append(f"edge {e}: endpoint {x} out of range [0, {n_vertices})")
                bad = True
        if not bad:
            clean.append((u, v))
    if problems:
        raise GraphError("; ".join(problems), problems)
    return Graph(n_vertices, tuple(clean))


# --------------------------------------------------------------------------
# filtrations


def _check_value(x: Any, what: str) -> Any:
    if isinstance(x, bool) or not isinstance(x, Real):
        raise MissingValue(f"{what}: {x!r} is not a real number")
    if isinstance(x, float) and math.isnan(x):
        raise MissingValue(f"{what}: NaN is not allowed")
    return x


@dataclass(frozen=True)
class Filtration:
    vertex_values: tuple[Any, ...]
    edge_values: tuple[Any, ...]
    ordering_only: bool = False  # set when values only encode an order and may break monotonicity
    levels: tuple[Any, ...] = field(init=False)
    step_of: Mapping[Any, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        levels = tuple(sorted(set(self.vertex_values) | set(self.edge_values)))
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "step_of", {a: i for i, a in enumerate(levels)})

    @property
    def n(self) -> int:
        """Index of the top level (levels are a_0 < ... < a_n)."""
        return len(self.levels) - 1

    def vertex_step(self, v: int) -> int:
        return self.step_of[self.vertex_values[v]]

    def edge_step(self, e: int) -> int:
        return self.step_of[self.edge_values[e]]

    def is_vertex_based(self, graph: Graph) -> bool:
        vv = self.vertex_values
        return all(self.edge_values[e] == max(vv[u], vv[v]) for e, (u, v) in enumerate(graph.edges))

    def max_value(self) -> Any:
        return self.levels[-1]

    def to_json(self) -> dict[str, Any]:
        return {
            "vertex_values": [_json_number(x) for x in self.vertex_values],
            "edge_values": [_json_number(x) for x in self.edge_values],
        }

    @classmethod
    def from_json(cls, graph: Graph, data: Mapping[str, Any]) -> "Filtration":
        if not isinstance(data, Mapping) or "vertex_values" not in data:
            raise MissingValue("filtration JSON needs 'vertex_values'")
        if data.get("edge_values") is None:
            return vertex_to_full(graph, data["vertex_values"])
        return validate_filtration(graph, data["vertex_values"], data["edge_values"])


def validate_filtration(graph: Graph, vertex_values: Sequence[Any], edge_values: Sequence[Any]) -> Filtration:
    vertex_values = list(vertex_values)
    edge_values = list(edge_values)
    if len(vertex_values) != graph.n_vertices:
        raise MissingValue(f"expected {graph.n_vertices} vertex values, got {len(vertex_values)}")
    if len(edge_values) != graph.n_edges:
        raise MissingValue(f"expected {graph.n_edges} edge values, got {len(edge_values)}")
    for v, x in enumerate(vertex_values):
        _check_value(x, f"vertex {v}")
    for e, x in enumerate(edge_values):
        _check_value(x, f"edge {e}")
    bad = [
        e
        for e, (u, v) in enumerate(graph.edges)
        if edge_values[e] < vertex_values[u] or edge_values[e] < vertex_values[v]
    ]
    if bad:
        problems = [f"edge {e} {graph.edges[e]} has value {edge_values[e]} below an endpoint" for e in bad]
        raise MonotonicityViolation(bad[0], "; ".join(problems), problems)
    return Filtration(tuple(vertex_values), tuple(edge_values))


def vertex_to_full(graph: Graph, vertex_values: Sequence[Any]) -> Filtration:
    vertex_values = list(vertex_values)
    if len(vertex_values) != graph.n_vertices:
        raise MissingValue(f"expected {graph.n_vertices} vertex values, got {len(vertex_values)}")
    for v, x in enumerate(vertex_values):
        _check_value(x, f"vertex {v}")
    edge_values = [max(vertex_values[u], vertex_values[v]) for u, v in graph.edges]
    return Filtration(tuple(vertex_values), tuple(edge_values))


# --------------------------------------------------------------------------
# intermediate complexes and permutations


@dataclass(frozen=True)
class IntermediateComplex:
    index: int
    vertices: frozenset[int]
    edges: frozenset[int]

    def is_empty(self) -> bool:
        return not self.vertices and not self.edges


@dataclass(frozen=True)
class Permutation:
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        m = self.mapping
        if any(isinstance(x, bool) or not isinstance(x, int) for x in m) or sorted(m) != list(range(len(m))):
            raise NotAPermutation(f"{list(m)!r} is not a permutation of 0..{len(m) - 1}")

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(size)))

    @classmethod
    def reverse(cls, size: int) -> "Permutation":
        return cls(tuple(range(size - 1, -1, -1)))

    @classmethod
    def from_json(cls, data: Any) -> "Permutation":
        if not isinstance(data, list):
            raise NotAPermutation("a permutation must be a JSON array")
        return cls(tuple(data))

    def __len__(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """Return self ∘ other, i.e. i -> self(other(i))."""
        if len(other) != len(self):
            raise NotAPermutation("cannot compose permutations of different sizes")
        return Permutation(tuple(self.mapping[j] for j in other.mapping))

    def to_json(self) -> list[int]:
        return list(self.mapping)


# --------------------------------------------------------------------------
# hourglass schedules


@dataclass(frozen=True)
class Event:
    op: str  # "include" or "contract"
    ic: int

    def __post_init__(self) -> None:
        if self.op not in ("include", "contract"):
            raise ScheduleError(f"unknown schedule op {self.op!r}")


def Include(i: int) -> Event:
    return Event("include", i)


def Contract(i: int) -> Event:
    return Event("contract", i)


@dataclass(frozen=True)
class HourglassSchedule:
    events: tuple[Event, ...]

    def is_complete(self, n_levels: int) -> bool:
        return {ev.ic for ev in self.events if ev.op == "contract"} == set(range(n_levels))

    def to_json(self) -> list[dict[str, Any]]:
        return [{"op": ev.op, "ic": ev.ic} for ev in self.events]

    @classmethod
    def from_json(cls, data: Any) -> "HourglassSchedule":
        if not isinstance(data, list):
            raise ScheduleError("a schedule must be a JSON array")
        events = []
        for k, item in enumerate(data):
            if not isinstance(item, Mapping) or "op" not in item or "ic" not in item:
                raise ScheduleError(f"schedule entry {k} must have 'op' and 'ic'")
            ic = item["ic"]
            if isinstance(ic, bool) or not isinstance(ic, int):
                raise UnknownIndex(f"schedule entry {k}: index {ic!r} is not an integer")
            events.append(Event(item["op"], ic))
        return cls(tuple(events))


# --------------------------------------------------------------------------
# diagrams


def _json_number(x: Any) -> Any:
    if x is None:
        return None
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    return x


def _parse_number(x: Any) -> Any:
    if x == "inf":
        return INF
    if x == "-inf":
        return -INF
    return x


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth_step: int
    death_step: float | int  # INF for essential classes
    birth_value: Any = None
    death_value: Any = None

    def __post_init__(self) -> None:
        if self.death_step != INF and self.death_step < self.birth_step:
            raise ValueError(f"death before birth: {self}")

    @property
    def essential(self) -> bool:
        return self.death_step == INF

    @property
    def zero_length(self) -> bool:
        return self.death_step == self.birth_step

    def steps(self) -> tuple[int, int, float | int]:
        return (self.dim, self.birth_step, self.death_step)

    def values(self) -> tuple[int, Any, Any]:
        return (self.dim, self.birth_value, self.death_value)

    def to_json(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "birth_step": self.birth_step,
            "death_step": _json_number(self.death_step),
            "birth_value": _json_number(self.birth_value),
            "death_value": _json_number(self.death_value),
        }

    @classmethod
    def from_json(cls, d: Mapping[str, Any]) -> "PersistencePair":
        return cls(
            int(d["dim"]),
            int(d["birth_step"]),
            _parse_number(d["death_step"]),
            _parse_number(d.get("birth_value")),
            _parse_number(d.get("death_value")),
        )


def _pair_key(p: PersistencePair) -> tuple:
    return (p.dim, p.birth_step, p.death_step)


@dataclass(frozen=True)
class PersistenceDiagram:
    pairs: tuple[PersistencePair, ...]
    mode: str
    keep_zero_length: bool = True
    g_shift: Any = None  # constant added to the contraction function when it was not positive

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        pairs = sorted(self.pairs, key=_pair_key)
        if not self.keep_zero_length:
            pairs = [p for p in pairs if not p.zero_length]
        object.__setattr__(self, "pairs", tuple(pairs))

    def __iter__(self) -> Iterator[PersistencePair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def has_function_time(self) -> bool:
        return all(p.birth_value is not None for p in self.pairs)

    def in_dim(self, dim: int) -> list[PersistencePair]:
        return [p for p in self.pairs if p.dim == dim]

    def step_multiset(self, dim: int | None = None) -> Counter:
        return Counter(p.steps() for p in self.pairs if dim is None or p.dim == dim)

    def value_multiset(self, dim: int | None = None) -> Counter:
        return Counter(p.values() for p in self.pairs if dim is None or p.dim == dim)

    def value_pairs(self, dim: int) -> list[tuple[Any, Any]]:
        return [(p.birth_value, p.death_value) for p in self.pairs if p.dim == dim]

    def drop_zero(self) -> "PersistenceDiagram":
        return PersistenceDiagram(self.pairs, self.mode, False, self.g_shift)

    def step_only(self) -> "PersistenceDiagram":
        pairs = tuple(PersistencePair(p.dim, p.birth_step, p.death_step) for p in self.pairs)
        return PersistenceDiagram(pairs, self.mode, self.keep_zero_length, None)

    def same_steps(self, other: "PersistenceDiagram") -> bool:
        return self.step_multiset() == other.step_multiset()

    def same_values(self, other: "PersistenceDiagram") -> bool:
        return self.value_multiset() == other.value_multiset()

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"mode": self.mode, "pairs": [p.to_json() for p in self.pairs]}
        if self.g_shift is not None:
            out["g_shift"] = _json_number(self.g_shift)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False)

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "PersistenceDiagram":
        pairs = tuple(PersistencePair.from_json(d) for d in data.get("pairs", []))
        return cls(pairs, data.get("mode", "forward"), True, _parse_number(data.get("g_shift")))
