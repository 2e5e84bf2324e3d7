"""Randomized check of the function-time stability bound for (f, g) diagrams."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .backward import fg_persistence
from .core import Filtration, Graph, validate_filtration
from .metrics import bottleneck_distance, bottleneck_excluding_essential


@dataclass(frozen=True)
class Trial:
    index: int
    d0: Any
    d1: Any
    bound: Any

    @property
    def ok(self) -> bool:
        return self.d0 <= self.bound and self.d1 <= self.bound

    @property
    def ratio(self) -> Fraction | None:
        worst = max(self.d0, self.d1)
        if self.bound == 0:
            return None if worst == 0 else Fraction(10**9)
        return Fraction(worst) / Fraction(self.bound)


@dataclass
class StabilityReport:
    trials: list[Trial] = field(default_factory=list)

    @property
    def violations(self) -> list[Trial]:
        return [t for t in self.trials if not t.ok]

    @property
    def max_ratio(self) -> Fraction:
        ratios = [t.ratio for t in self.trials if t.ratio is not None]
        return max(ratios, default=Fraction(0))

    def to_json(self) -> dict[str, Any]:
        return {
            "trials": len(self.trials),
            "violations": [t.index for t in self.violations],
            "max_ratio": float(self.max_ratio),
        }


def sup_diff(a: Filtration, b: Filtration) -> Any:
    diffs = [abs(x - y) for x, y in zip(a.vertex_values + a.edge_values, b.vertex_values + b.edge_values)]
    return max(diffs, default=0)


def stability_bound(f: Filtration, g: Filtration, f2: Filtration, g2: Filtration) -> Any:
    return 2 * sup_diff(f, f2) + sup_diff(g, g2) + abs(f.max_value() - f2.max_value())


def random_filtration(rng: random.Random, graph: Graph, lo: Fraction, hi: Fraction, grid: Fraction) -> Filtration:
    steps = int((hi - lo) / grid)
    vv = [lo + grid * rng.randint(0, steps) for _ in range(graph.n_vertices)]
    ev = [max(vv[u], vv[v]) + grid * rng.choice((0, 0, 1, 2)) for u, v in graph.edges]
    return validate_filtration(graph, vv, ev)


def perturb(rng: random.Random, graph: Graph, f: Filtration, eps: Fraction) -> Filtration:
    """Uniform noise in [-eps, eps] on every cell; edges are then raised to
    their endpoints so the result is again a filtration."""
    noise = lambda: eps * Fraction(rng.randint(-1000, 1000), 1000)  # noqa: E731
    vv = [x + noise() for x in f.vertex_values]
    ev = [max(x + noise(), vv[u], vv[v]) for x, (u, v) in zip(f.edge_values, graph.edges)]
    return validate_filtration(graph, vv, ev)


def random_graph(rng: random.Random, max_n: int) -> Graph:
    n = rng.randint(1, max_n)
    m = rng.randint(0, 2 * n)
    return Graph(n, tuple((rng.randrange(n), rng.randrange(n)) for _ in range(m)))


def run_trial(index: int, graph: Graph, f: Filtration, g: Filtration, f2: Filtration, g2: Filtration) -> Trial:
    a = fg_persistence(graph, f, g)
    b = fg_persistence(graph, f2, g2)
    d0 = bottleneck_excluding_essential(a, b, 0)
    d1 = bottleneck_distance(a, b, 1)
    return Trial(index, d0, d1, stability_bound(f, g, f2, g2))


def run_stability(
    trials: int = 1000, max_n: int = 10, eps: Fraction | str = "0.1", seed: int = 0, adversarial: bool = False
) -> StabilityReport:
    """With ``adversarial`` the base values sit on a grid of spacing eps/2,
    so most perturbations swap the order of neighbouring levels."""
    eps = Fraction(eps)
    rng = random.Random(seed)
    grid = eps / 2 if adversarial else Fraction(1, 10)
    lo, hi = Fraction(1), Fraction(1) + (20 * grid if adversarial else Fraction(9))
    report = StabilityReport()
    for k in range(trials):
        graph = random_graph(rng, max_n)
        f = random_filtration(rng, graph, lo, hi, grid)
        g = random_filtration(rng, graph, lo, hi, grid)
        report.trials.append(run_trial(k, graph, f, g, perturb(rng, graph, f, eps), perturb(rng, graph, g, eps)))
    return report
