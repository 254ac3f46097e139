"""Runtime benchmarks of the exact solvers on random instances.

Instances are drawn per (suite, n, p, repetition) from a string-seeded RNG,
so a record's instance does not depend on what else is run.
"""
from __future__ import annotations

import csv
import gc
import json
import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .fpt import DERANDOMIZED, solve_ns_components, solve_ns_path, solve_ns_star
from .model import Instance, classify_topology
from .sampling import path_edges, random_component_edges, random_instance, star_edges

SUITES = ("paths", "stars", "components")


@dataclass(frozen=True)
class BenchRecord:
    instance_id: str
    method: str
    n: int
    p: int
    c: int
    elapsed: float
    verdict: str


@dataclass(frozen=True)
class BenchConfig:
    suite: str = "paths"
    n_values: tuple[int, ...] = (20, 40)
    p_values: tuple[int, ...] = (3,)
    repetitions: int = 20
    seed: int = 0
    q_approve: float = 0.3
    max_component: int = 4
    star_modes: tuple[str, ...] = (DERANDOMIZED,)
    workers: int = 1

    def __post_init__(self) -> None:
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {SUITES}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be positive")


def bench_instance(cfg: BenchConfig, n: int, p: int, rep: int) -> tuple[str, Instance]:
    rng = random.Random(f"{cfg.seed}:{cfg.suite}:{n}:{p}:{rep}")
    if cfg.suite == "paths":
        edges = path_edges(n)
    elif cfg.suite == "stars":
        edges = star_edges(n)
    else:
        sizes, left = [], n
        while left:
            s = rng.randint(1, min(cfg.max_component, left))
            sizes.append(s)
            left -= s
        edges = random_component_edges(rng, sizes)
    inst = random_instance(rng, n, p, edges, q_approve=cfg.q_approve)
    return f"{cfg.suite}-n{n}-p{p}-r{rep}", inst


def _methods(cfg: BenchConfig):
    if cfg.suite == "paths":
        return [("path", solve_ns_path)]
    if cfg.suite == "stars":
        out = []
        for mode in cfg.star_modes:
            out.append((f"star-{mode}", lambda inst, mode=mode, s=cfg.seed: solve_ns_star(inst, mode, seed=s)))
        return out
    return [("components-nash", lambda inst: solve_ns_components(inst, max_component=cfg.max_component))]


def _timed(solve, inst):
    # like timeit: collector paused so timings do not depend on the host heap
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        return solve(inst)
    finally:
        if was_enabled:
            gc.enable()


def _run_one(args) -> list[BenchRecord]:
    cfg, n, p, rep = args
    iid, inst = bench_instance(cfg, n, p, rep)
    c = classify_topology(inst).c
    out = []
    for name, solve in _methods(cfg):
        res = _timed(solve, inst)
        out.append(BenchRecord(iid, name, n, p, c, res.elapsed, res.status.value))
    return out


def run_bench(cfg: BenchConfig) -> list[BenchRecord]:
    jobs = [(cfg, n, p, rep) for n in cfg.n_values for p in cfg.p_values for rep in range(cfg.repetitions)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            chunks = list(pool.map(_run_one, jobs))
    else:
        chunks = [_run_one(job) for job in jobs]
    records = [r for chunk in chunks for r in chunk]
    return sorted(records, key=lambda r: (r.instance_id, r.method))


def medians(records: list[BenchRecord]) -> dict[tuple[str, int, int], float]:
    """Median elapsed time per (method, n, p)."""
    groups: dict[tuple[str, int, int], list[float]] = {}
    for r in records:
        groups.setdefault((r.method, r.n, r.p), []).append(r.elapsed)
    return {key: statistics.median(vals) for key, vals in sorted(groups.items())}


def verdict_agreement(records: list[BenchRecord], left: str, right: str) -> float:
    """Fraction of instances where two methods return the same verdict."""
    by_id: dict[str, dict[str, str]] = {}
    for r in records:
        by_id.setdefault(r.instance_id, {})[r.method] = r.verdict
    pairs = [v for v in by_id.values() if left in v and right in v]
    if not pairs:
        return 1.0
    return sum(v[left] == v[right] for v in pairs) / len(pairs)


def write_records(records: list[BenchRecord], path: str | Path) -> None:
    path = Path(path)
    rows = [asdict(r) for r in records]
    if path.suffix == ".json":
        path.write_text(json.dumps(rows, indent=2) + "\n")
        return
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(BenchRecord.__dataclass_fields__))
        writer.writeheader()
        writer.writerows(rows)
