"""Bundled witness pairs and the separation checks run against them."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from typing import Any

from .backward import backward_only, extended_fb, fb_persistence, fg_persistence
from .core import INF, Filtration, Graph, HourglassSchedule, PersistenceDiagram, _parse_number, vertex_to_full
from .forward import forward_inclusion
from .hourglass import hourglass_persistence

FIXTURES = ("path_star", "two_triangles", "twin_trees", "bigon_square", "square_contraction")


@dataclass(frozen=True)
class Check:
    fixture: str
    name: str
    passed: bool
    detail: str = ""
    kind: str = "separation"  # or "pairs", or "published" for literal list comparisons

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{tag} {self.fixture}: {self.name}{tail}"


def load_fixture(name: str) -> dict[str, Any]:
    text = resources.files("fbpersist.fixtures").joinpath(f"{name}.json").read_text()
    return json.loads(text)


def load_pair(data: dict[str, Any], key: str) -> tuple[Graph, Filtration]:
    g = Graph.from_json(data[key]["graph"])
    return g, Filtration.from_json(g, data[key]["filtration"])


def forward_diagram(graph: Graph, f: Filtration) -> PersistenceDiagram:
    fwd = forward_inclusion(graph, f)
    return PersistenceDiagram(tuple(fwd.pd0 + fwd.pd1), "forward")


def same(a: PersistenceDiagram, b: PersistenceDiagram) -> bool:
    """Equal in step time, and in function time when both carry values."""
    if not a.same_steps(b):
        return False
    if a.has_function_time and b.has_function_time:
        return a.same_values(b)
    return True


def published_multiset(entries: list) -> Counter:
    out: Counter = Counter()
    for dim, (b, d) in entries:
        out[(dim, _parse_number(b), _parse_number(d))] += 1
    return out


def _values(diagram: PersistenceDiagram, dim: int | None = None) -> Counter:
    return Counter(
        (p.dim, p.birth_value, p.death_value) for p in diagram.pairs if dim is None or p.dim == dim
    )


def check_path_star(data: dict[str, Any]) -> list[Check]:
    G, fG = load_pair(data, "G")
    H, fH = load_pair(data, "H")
    name = data["name"]
    return [
        Check(name, "forward equal", same(forward_diagram(G, fG), forward_diagram(H, fH))),
        Check(name, "backward differ", not same(backward_only(G, fG), backward_only(H, fH))),
    ]


def check_two_triangles(data: dict[str, Any]) -> list[Check]:
    G, fG = load_pair(data, "G")
    H, fH = load_pair(data, "H")
    name = data["name"]
    want = published_multiset(data["published_forward"])
    got = _values(forward_diagram(G, fG))
    return [
        Check(name, "forward diagram of G matches published list", got == want, kind="published"),
        Check(name, "forward equal", same(forward_diagram(G, fG), forward_diagram(H, fH))),
        Check(name, "backward equal", same(backward_only(G, fG), backward_only(H, fH))),
        Check(name, "fb differ", not same(fb_persistence(G, fG), fb_persistence(H, fH))),
    ]


def check_twin_trees(data: dict[str, Any]) -> list[Check]:
    G, fG = load_pair(data, "G")
    H, fH = load_pair(data, "H")
    name = data["name"]
    fbG, fbH = fb_persistence(G, fG), fb_persistence(H, fH)
    want = published_multiset([[0, pair] for pair in data["published_fb_dim0"]])
    sched = HourglassSchedule.from_json(data["schedule"])
    hG, hH = hourglass_persistence(G, fG, sched), hourglass_persistence(H, fH, sched)
    got_G, got_H = _values(fbG, 0), _values(fbH, 0)
    return [
        Check(name, "fb equal", same(fbG, fbH)),
        Check(
            name,
            "fb dim-0 diagrams match published list",
            got_G == want and got_H == want,
            "" if got_G == want else f"computed {sorted(got_G.elements(), key=str)}",
            kind="published",
        ),
        Check(name, "hourglass differ", not same(hG, hH)),
    ]


def check_bigon_square(data: dict[str, Any]) -> list[Check]:
    G, fG = load_pair(data, "G")
    H, fH = load_pair(data, "H")
    name = data["name"]
    return [
        Check(name, "fb differ", not same(fb_persistence(G, fG), fb_persistence(H, fH))),
        Check(name, "extended equal", same(extended_fb(G, fG), extended_fb(H, fH))),
    ]


def contraction_pairs(data: dict[str, Any]) -> Counter:
    """Nonzero dim-1 pairs of the contraction sequence, shifted by the fixture's time offset."""
    g = Graph.from_json(data["graph"])
    f = Filtration.from_json(g, data["f"])
    h = Filtration.from_json(g, data["g"])
    off = data["time_offset"]
    diagram = fg_persistence(g, f, h).drop_zero()
    return Counter(
        (p.birth_step + off, p.death_step + off if p.death_step != INF else INF) for p in diagram.in_dim(1)
    )


def check_square_contraction(data: dict[str, Any]) -> list[Check]:
    want = Counter(tuple(x) for x in data["published_dim1"])
    got = contraction_pairs(data)
    detail = "" if got == want else f"computed {sorted(got)}"
    return [Check(data["name"], "dim-1 pairs", got == want, detail, kind="pairs")]


CHECKS = {
    "path_star": check_path_star,
    "two_triangles": check_two_triangles,
    "twin_trees": check_twin_trees,
    "bigon_square": check_bigon_square,
    "square_contraction": check_square_contraction,
}


def run_witness_suite(
    fixtures: dict[str, dict[str, Any]] | None = None, published: bool = False
) -> list[Check]:
    """Run every fixture's checks; literal published-list comparisons only
    when ``published`` is set."""
    if fixtures is None:
        fixtures = {name: load_fixture(name) for name in FIXTURES}
    results: list[Check] = []
    for name in FIXTURES:
        if name in fixtures:
            results.extend(c for c in CHECKS[name](fixtures[name]) if published or c.kind != "published")
    return results


def search_backward_equal_forward_differ(
    seed: int = 0, trials: int = 2000, n: int = 6, m: int = 7
) -> tuple[Graph, Graph] | None:
    """Random search for a pair with equal backward and different forward
    diagrams under the degree filtration. Not one of the bundled pairs."""
    rng = random.Random(seed)
    seen: dict[Any, Graph] = {}
    for _ in range(trials):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = Graph(n, tuple(sorted(rng.sample(pairs, m))))
        deg = [0] * n
        for u, v in g.edges:
            deg[u] += 1
            deg[v] += 1
        f = vertex_to_full(g, deg)
        key = tuple(sorted(backward_only(g, f).step_multiset().items()))
        other = seen.get(key)
        if other is not None:
            deg2 = [0] * n
            for u, v in other.edges:
                deg2[u] += 1
                deg2[v] += 1
            f2 = vertex_to_full(other, deg2)
            if not same(forward_diagram(g, f), forward_diagram(other, f2)):
                return g, other
        else:
            seen[key] = g
    return None
