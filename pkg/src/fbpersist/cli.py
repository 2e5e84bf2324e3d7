"""``ph`` command line: compute, oracle, distance, witness, stability, bench.

Exit codes: 0 pass, 1 assertion failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import _kernels
from .backward import (
    backward_only,
    extended_fb,
    fb_persistence,
    ff_shortcut,
    fg_persistence,
    sigma_tau_persistence,
)
from .core import (
    Filtration,
    FunctionTimeUndefined,
    Graph,
    HourglassSchedule,
    Permutation,
    PersistenceDiagram,
    PHError,
    StackUnderflow,
    _json_number,
)
from .forward import forward_inclusion
from .hourglass import hourglass_persistence, validate_schedule
from .metrics import bottleneck_distance, bottleneck_excluding_essential
from .oracle import oracle_diagram

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

MODES = ("forward", "backward", "fb", "fg", "sigma-tau", "extended", "ff", "hourglass")
STEP_ONLY = ("backward", "hourglass")


class UsageError(Exception):
    pass


def _load_json(text: str) -> Any:
    """A path to a JSON file, or inline JSON when the text starts with [ or {."""
    stripped = text.lstrip()
    if stripped[:1] in "[{":
        return json.loads(stripped)
    return json.loads(Path(text).read_text())


def _emit(payload: Any, output: str | None) -> None:
    text = json.dumps(payload, ensure_ascii=False, sort_keys=False)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def _error(exc: BaseException) -> int:
    detail = {"error": type(exc).__name__, "message": str(exc)}
    problems = getattr(exc, "problems", None)
    if problems and list(problems) != [str(exc)]:
        detail["problems"] = list(problems)
    print(json.dumps(detail), file=sys.stderr)
    return EXIT_INPUT


# --------------------------------------------------------------------------
# compute / oracle


def _inputs(args: argparse.Namespace) -> dict[str, Any]:
    graph = Graph.from_json(_load_json(args.graph))
    f = Filtration.from_json(graph, _load_json(args.filtration))
    out: dict[str, Any] = {"graph": graph, "f": f}
    if args.mode == "fg":
        if args.g is None:
            raise UsageError("mode fg needs --g")
        out["g"] = Filtration.from_json(graph, _load_json(args.g))
    if args.mode == "sigma-tau":
        if args.sigma is None or args.tau is None:
            raise UsageError("mode sigma-tau needs --sigma and --tau")
        out["sigma"] = Permutation.from_json(_load_json(args.sigma))
        out["tau"] = Permutation.from_json(_load_json(args.tau))
    if args.mode == "hourglass":
        if args.schedule is None:
            raise UsageError("mode hourglass needs --schedule")
        out["schedule"] = HourglassSchedule.from_json(_load_json(args.schedule))
    return out


def _want_function_time(args: argparse.Namespace) -> bool:
    if args.time == "function" and args.mode in STEP_ONLY:
        raise FunctionTimeUndefined(f"function time is not defined for mode {args.mode}")
    if args.time is None:
        return args.mode not in STEP_ONLY
    return args.time == "function"


def _finish(diagram: PersistenceDiagram, args: argparse.Namespace, function_time: bool) -> PersistenceDiagram:
    if not function_time:
        diagram = diagram.step_only()
    if args.drop_zero:
        diagram = diagram.drop_zero()
    return diagram


def engine_diagram(args: argparse.Namespace) -> PersistenceDiagram:
    x = _inputs(args)
    graph, f, mode = x["graph"], x["f"], args.mode
    if mode == "forward":
        fwd = forward_inclusion(graph, f)
        return PersistenceDiagram(tuple(fwd.pd0 + fwd.pd1), "forward")
    if mode == "backward":
        return backward_only(graph, f)
    if mode == "fb":
        return fb_persistence(graph, f)
    if mode == "fg":
        return fg_persistence(graph, f, x["g"])
    if mode == "sigma-tau":
        return sigma_tau_persistence(graph, f, x["sigma"], x["tau"])
    if mode == "extended":
        return extended_fb(graph, f)
    if mode == "ff":
        return ff_shortcut(graph, f)
    validate_schedule(graph, f, x["schedule"])
    return hourglass_persistence(graph, f, x["schedule"])


def reference_diagram(args: argparse.Namespace) -> PersistenceDiagram:
    x = _inputs(args)
    graph, f, mode = x["graph"], x["f"], args.mode
    if mode == "hourglass":
        validate_schedule(graph, f, x["schedule"])
    oracle_mode = {"sigma-tau": "sigma_tau", "ff": "fg"}.get(mode, mode)
    g = f if mode == "ff" else x.get("g")
    return oracle_diagram(
        graph, oracle_mode, f, g=g, sigma=x.get("sigma"), tau=x.get("tau"), schedule=x.get("schedule")
    )


def cmd_compute(args: argparse.Namespace) -> int:
    function_time = _want_function_time(args)
    diagram = engine_diagram(args)
    _emit(_finish(diagram, args, function_time).to_json(), args.output)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    function_time = _want_function_time(args)
    diagram = reference_diagram(args)
    _emit(_finish(diagram, args, function_time).to_json(), args.output)
    return EXIT_OK


# --------------------------------------------------------------------------
# distance


def cmd_distance(args: argparse.Namespace) -> int:
    a = PersistenceDiagram.from_json(_load_json(args.a))
    b = PersistenceDiagram.from_json(_load_json(args.b))
    if args.exclude_essential:
        d = bottleneck_excluding_essential(a, b, args.dim)
    else:
        d = bottleneck_distance(a, b, args.dim)
    _emit({"dim": args.dim, "exclude_essential": args.exclude_essential, "distance": _json_number(d)}, None)
    return EXIT_OK


# --------------------------------------------------------------------------
# witness / stability / bench


def cmd_witness(args: argparse.Namespace) -> int:
    from .witness import FIXTURES, load_fixture, run_witness_suite

    fixtures = {}
    for name in FIXTURES:
        if args.fixtures_dir:
            path = Path(args.fixtures_dir) / f"{name}.json"
            if path.exists():
                fixtures[name] = json.loads(path.read_text())
        else:
            fixtures[name] = load_fixture(name)
    results = run_witness_suite(fixtures, published=args.published)
    for check in results:
        print(check.line())
    failed = sum(not c.passed for c in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_stability(args: argparse.Namespace) -> int:
    from .stability import run_stability

    report = run_stability(args.trials, args.max_n, args.eps, args.seed, args.adversarial)
    _emit(report.to_json(), args.output)
    return EXIT_FAIL if report.violations else EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    from .bench import run_bench

    if args.backend == "both":
        backends = tuple(_kernels.BACKENDS)
    else:
        if args.backend not in _kernels.BACKENDS:
            raise UsageError(f"backend {args.backend} is not available (have {sorted(_kernels.BACKENDS)})")
        backends = (args.backend,)
    report = run_bench(args.generator, args.size, args.cycles, args.seed, backends, args.threshold)
    _emit(report, args.output)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _diagram_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", required=True, choices=MODES)
    p.add_argument("--graph", required=True, help="graph JSON file or inline JSON")
    p.add_argument("--filtration", required=True, help="filtration JSON file or inline JSON")
    p.add_argument("--g", help="second filtration for mode fg")
    p.add_argument("--sigma", help="inclusion permutation for mode sigma-tau")
    p.add_argument("--tau", help="contraction permutation for mode sigma-tau")
    p.add_argument("--schedule", help="schedule JSON for mode hourglass")
    p.add_argument("--time", choices=("step", "function"), help="default: function time where defined")
    p.add_argument("--drop-zero", action="store_true", help="drop zero-length pairs")
    p.add_argument("--output", "-o", help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ph", description="Forward, backward and hourglass graph persistence.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="diagram from the streaming engines")
    _diagram_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("oracle", help="diagram from the brute-force reference")
    _diagram_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("distance", help="bottleneck distance between two diagram files")
    p.add_argument("--dim", type=int, choices=(0, 1), required=True)
    p.add_argument("--exclude-essential", action="store_true")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("witness", help="check the bundled witness pairs")
    p.add_argument("--fixtures-dir", help="read fixtures from this directory instead")
    p.add_argument("--published", action="store_true", help="also compare against published diagram lists")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("stability", help="randomized stability-bound check")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--eps", default="0.1", help="perturbation size (decimal or fraction, exact)")
    p.add_argument("--adversarial", action="store_true", help="grid values so perturbations cross levels")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("bench", help="phase timings on synthetic graphs")
    p.add_argument("--generator", choices=("sparse", "grid", "tree"), default="sparse")
    p.add_argument("--size", type=int, default=100_000, help="edges (sparse), side (grid) or vertices (tree)")
    p.add_argument("--cycles", type=int, default=2000)
    p.add_argument("--backend", default="both", help="pure, compiled or both")
    p.add_argument("--threshold", type=int, help="also build a threshold-d hourglass schedule")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except StackUnderflow as exc:
        # an internal invariant broke: report it as a failure, not bad input
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_FAIL
    except (PHError, ValueError, OSError, KeyError, TypeError) as exc:
        return _error(exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
