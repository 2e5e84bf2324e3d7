"""Synthetic graph generators and phase timings for the engines."""

from __future__ import annotations

import random
import time
from typing import Any, Callable

from . import _kernels
from .backward import backward_contraction
from .core import Filtration, Graph, vertex_to_full
from .filtration import backward_filtration, groups_from_filtration
from .forward import forward_from_groups
from .hourglass import threshold_schedule


def random_sparse(n_edges: int, cycles: int, seed: int = 0) -> Graph:
    """Random recursive tree plus ``cycles`` random extra edges: exactly
    ``n_edges`` edges and ``cycles`` independent cycles."""
    rng = random.Random(seed)
    n = n_edges - cycles + 1
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    edges += [(rng.randrange(n), rng.randrange(n)) for _ in range(cycles)]
    return Graph(n, tuple(edges))


def grid(width: int, height: int) -> Graph:
    def vid(x: int, y: int) -> int:
        return y * width + x

    edges = []
    for y in range(height):
        for x in range(width):
            if x + 1 < width:
                edges.append((vid(x, y), vid(x + 1, y)))
            if y + 1 < height:
                edges.append((vid(x, y), vid(x, y + 1)))
    return Graph(width * height, tuple(edges))


def tree_chords(n: int, chords: int, seed: int = 0) -> Graph:
    """Path-biased spanning tree (long cycles) plus random chords."""
    rng = random.Random(seed)
    edges = [(max(0, v - 1 - rng.randrange(3)), v) for v in range(1, n)]
    edges += [(rng.randrange(n), rng.randrange(n)) for _ in range(chords)]
    return Graph(n, tuple(edges))


GENERATORS: dict[str, Callable[..., Graph]] = {
    "sparse": random_sparse,
    "grid": grid,
    "tree": tree_chords,
}


def random_vertex_filtration(graph: Graph, levels: int = 100, seed: int = 0) -> Filtration:
    rng = random.Random(seed)
    return vertex_to_full(graph, [rng.randrange(levels) for _ in range(graph.n_vertices)])


def time_phases(graph: Graph, f: Filtration) -> dict[str, Any]:
    """Wall time of each fb phase under the active kernel backend."""
    t0 = time.perf_counter()
    fgroups = groups_from_filtration(graph, f)
    cgroups = groups_from_filtration(graph, backward_filtration(graph, f))
    t1 = time.perf_counter()
    fwd = forward_from_groups(graph, fgroups)
    t2 = time.perf_counter()
    pd0, pd1, _ = backward_contraction(graph, fwd, cgroups)
    t3 = time.perf_counter()
    return {
        "backend": _kernels.backend(),
        "sort": t1 - t0,
        "forward": t2 - t1,
        "backward": t3 - t2,
        "total": t3 - t0,
        "basis_size": len(fwd.basis),
        "pairs": len(pd0) + len(pd1),
    }


def run_bench(
    generator: str = "sparse",
    size: int = 100_000,
    cycles: int = 2000,
    seed: int = 0,
    backends: tuple[str, ...] | None = None,
    threshold: int | None = None,
) -> dict[str, Any]:
    if generator == "sparse":
        graph = random_sparse(size, cycles, seed)
    elif generator == "grid":
        graph = grid(size, size)
    elif generator == "tree":
        graph = tree_chords(size, cycles, seed)
    else:
        raise ValueError(f"unknown generator {generator!r}; choose from {sorted(GENERATORS)}")
    f = random_vertex_filtration(graph, seed=seed)
    report: dict[str, Any] = {
        "generator": generator,
        "vertices": graph.n_vertices,
        "edges": graph.n_edges,
        "seed": seed,
        "runs": [],
    }
    for name in backends or tuple(_kernels.BACKENDS):
        with _kernels.use(name):
            report["runs"].append(time_phases(graph, f))
    if threshold is not None:
        _, peak = threshold_schedule(graph, f, threshold)
        report["threshold"] = {"d": threshold, "peak_live": peak}
    return report
