"""Command line entry point.

Exit codes: 0 stable / found, 1 error, 2 no stable outcome exists,
3 the given assignment violates the requested concept.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .bench import SUITES, BenchConfig, medians, run_bench, write_records
from .fpt import DERANDOMIZED, RANDOMIZED
from .fpt.components import solve_core_components, solve_ns_components
from .fpt.path import solve_ns_path
from .fpt.star import solve_ns_star
from .model import Instance, InstanceError, TopologyTag, classify_topology, is_forest
from .oracle import OracleBoundError, SolveOutcome, oracle_find_stable
from .reductions import SourceError, generate, source_from_dict
from .reductions.sources import Formula3B2, Mmm, RainbowPath
from .stability import Concept, analyze, check_core_forest, find_strong_block
from .tree_solvers import solve_core_copyable_forest, solve_ns_copyable_forest

EXIT_OK, EXIT_ERROR, EXIT_NONE, EXIT_VIOLATED = 0, 1, 2, 3

METHODS = ("auto", "oracle", "path", "star", "components", "forest-copyable")
FAMILIES = {
    "ns-path-rainbow": (RainbowPath, Concept.NASH),
    "ns-star-mmm": (Mmm, Concept.NASH),
    "ns-components-3sat": (Formula3B2, Concept.NASH),
    "core-path-rainbow": (RainbowPath, Concept.CORE),
    "core-star-mmm": (Mmm, Concept.CORE),
    "core-components-3sat": (Formula3B2, Concept.CORE),
}


class UsageError(Exception):
    pass


def _concept(text: str) -> Concept:
    return Concept(text.lower())


def report_for(inst: Instance, pi, concept: Concept) -> dict:
    """Checker report; the core part is only filled in for the core concept.

    The core witness is the lexicographically smallest block when exhaustive
    search is allowed, otherwise the forest check's certificate.
    """
    rep = analyze(inst, pi, core=False)
    if concept is Concept.CORE and rep.individually_rational:
        try:
            rep.core_witness = find_strong_block(inst, pi)
        except ValueError:
            if not is_forest(inst):
                raise
            rep.core_witness = check_core_forest(inst, pi)
    out = rep.to_dict()
    if concept is not Concept.CORE:
        out["core_stable"] = None
    out["concept"] = concept.value
    out["stable"] = rep.holds(concept)
    return out


def cmd_check(args) -> int:
    inst = io.load_instance(args.instance)
    pi = io.load_assignment(args.assignment, inst)
    out = report_for(inst, pi, _concept(args.concept))
    print(json.dumps(out, indent=2))
    return EXIT_OK if out["stable"] else EXIT_VIOLATED


def _all_copyable(inst: Instance) -> bool:
    return all(inst.is_copyable(a) for a in inst.class_ids)


def choose_method(inst: Instance, concept: Concept) -> str:
    if concept is Concept.IR:
        return "oracle"
    if is_forest(inst) and _all_copyable(inst):
        return "forest-copyable"
    if any(c != 1 for _, c in inst.activities):
        return "oracle"
    tag = classify_topology(inst).tag
    if concept is Concept.CORE:
        return "components" if tag is TopologyTag.SMALL_COMPONENTS else "oracle"
    return {
        TopologyTag.PATH: "path",
        TopologyTag.STAR: "star",
        TopologyTag.SMALL_COMPONENTS: "components",
    }.get(tag, "oracle")


def solve(inst: Instance, concept: Concept, method: str = "auto", *, seed: int = 0,
          derandomize: bool = True, max_oracle_n: int | None = None) -> SolveOutcome:
    if method == "auto":
        method = choose_method(inst, concept)
    try:
        if method == "oracle":
            return oracle_find_stable(inst, concept, max_n=max_oracle_n)
        if concept is Concept.IR:
            raise UsageError(f"method {method!r} does not solve for individual rationality")
        if method == "forest-copyable":
            solver = solve_ns_copyable_forest if concept is Concept.NASH else solve_core_copyable_forest
            return solver(inst)
        if method == "components":
            solver = solve_ns_components if concept is Concept.NASH else solve_core_components
            return solver(inst)
        if concept is Concept.CORE:
            raise UsageError(f"method {method!r} only decides Nash stability")
        if method == "path":
            return solve_ns_path(inst)
        if method == "star":
            return solve_ns_star(inst, DERANDOMIZED if derandomize else RANDOMIZED, seed=seed)
    except OracleBoundError:
        raise
    except ValueError as exc:
        raise UsageError(f"method {method!r} is not applicable: {exc}") from exc
    raise UsageError(f"unknown method {method!r}")


def cmd_solve(args) -> int:
    inst = io.load_instance(args.instance)
    concept = _concept(args.concept)
    res = solve(inst, concept, args.method, seed=args.seed,
                derandomize=not args.randomize, max_oracle_n=args.max_oracle_n)
    summary = {"status": res.status.value, "method": res.method, "elapsed": res.elapsed}
    if not res.found:
        print(json.dumps(summary))
        return EXIT_NONE
    report = report_for(inst, res.assignment, concept)
    if not report["stable"]:
        raise RuntimeError(f"solver {res.method} returned an assignment that fails the checker")
    payload = io.assignment_to_dict(res.assignment)
    if args.out:
        io.write_json(args.out, payload)
    else:
        summary.update(payload)
    print(json.dumps(summary))
    return EXIT_OK


def cmd_generate(args) -> int:
    kind, concept = FAMILIES[args.family]
    raw = json.loads(Path(args.source).read_text())
    src = source_from_dict(raw)
    if not isinstance(src, kind):
        raise SourceError(f"family {args.family} needs a {kind.__name__} source")
    inst = generate(src, concept)
    provenance = {"family": args.family, "concept": concept.value, "source": raw}
    io.write_json(args.out, io.instance_to_dict(inst, provenance))
    print(json.dumps({"players": inst.n, "classes": inst.p, "out": str(args.out)}))
    return EXIT_OK


def _int_range(text: str) -> tuple[int, ...]:
    """``3`` -> (3,), ``1..6`` -> (1,...,6), ``20,40`` -> (20, 40)."""
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(x) for x in text.split(","))


def cmd_bench(args) -> int:
    modes = (DERANDOMIZED, RANDOMIZED) if args.suite == "stars" and args.both_modes else (
        (RANDOMIZED,) if args.randomize else (DERANDOMIZED,)
    )
    cfg = BenchConfig(
        suite=args.suite,
        n_values=_int_range(args.n),
        p_values=_int_range(args.p),
        repetitions=args.repetitions,
        seed=args.seed,
        q_approve=args.q_approve,
        star_modes=modes,
        workers=args.workers,
    )
    records = run_bench(cfg)
    write_records(records, args.out)
    for (method, n, p), med in medians(records).items():
        print(f"{method}\tn={n}\tp={p}\tmedian={med:.6f}s")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ggasp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify an assignment")
    p.add_argument("--instance", required=True)
    p.add_argument("--assignment", required=True)
    p.add_argument("--concept", default="nash", choices=[c.value for c in Concept])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="find a stable assignment")
    p.add_argument("--instance", required=True)
    p.add_argument("--concept", default="nash", choices=[c.value for c in Concept])
    p.add_argument("--method", default="auto", choices=METHODS)
    p.add_argument("--seed", type=int, default=0)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--derandomize", action="store_true", default=True,
                      help="star solver: perfect hash family (default)")
    mode.add_argument("--randomize", action="store_true",
                      help="star solver: random colorings")
    p.add_argument("--max-oracle-n", type=int, default=None)
    p.add_argument("--out", default=None, help="write the assignment here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="build an instance from a reduction source")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--source", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="time the exact solvers on random instances")
    p.add_argument("--suite", default="paths", choices=SUITES)
    p.add_argument("--n", default="20,40", help="e.g. 40, 20,40 or 10..40")
    p.add_argument("--p", default="3", help="e.g. 3 or 1..6")
    p.add_argument("--repetitions", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--q-approve", type=float, default=0.3)
    p.add_argument("--randomize", action="store_true")
    p.add_argument("--both-modes", action="store_true", help="stars: run both color-coding modes")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="bench.csv")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (InstanceError, SourceError, UsageError, OracleBoundError, OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
