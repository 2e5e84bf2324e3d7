"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --edges 100000 --cycles 2000 --repeat 3
"""

from __future__ import annotations

import argparse
import json
import time

from fbpersist import _kernels
from fbpersist.bench import random_sparse, random_vertex_filtration, time_phases


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--edges", type=int, default=100_000)
    parser.add_argument("--cycles", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    graph = random_sparse(args.edges, args.cycles, args.seed)
    f = random_vertex_filtration(graph, seed=args.seed)
    rows = {}
    for name in sorted(_kernels.BACKENDS):
        with _kernels.use(name):
            phases = [time_phases(graph, f) for _ in range(args.repeat)]
        rows[name] = {k: min(p[k] for p in phases) for k in ("sort", "forward", "backward", "total")}
    report = {"edges": graph.n_edges, "vertices": graph.n_vertices, "cycles": args.cycles, "best_of": args.repeat}
    report["backends"] = rows
    if "compiled" in rows:
        report["speedup"] = {k: rows["pure"][k] / rows["compiled"][k] for k in ("forward", "backward", "total")}
    print(json.dumps(report, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
