"""Compare every exact solver with the brute-force oracle on random instances.

    python scripts/oracle_agreement.py --count 1000 --max-n 8
"""
import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from ggasp.fpt import (
    DERANDOMIZED,
    RANDOMIZED,
    solve_core_components,
    solve_ns_components,
    solve_ns_path,
    solve_ns_star,
)
from ggasp.model import make_instance
from ggasp.oracle import oracle_find_stable
from ggasp.sampling import (
    path_edges,
    random_component_edges,
    random_forest_edges,
    random_instance,
    star_edges,
)
from ggasp.stability import Concept
from ggasp.tree_solvers import solve_ns_copyable_forest


@dataclass
class AgreementConfig:
    count: int = 500
    max_n: int = 8
    max_p: int = 3
    seed: int = 0


def _sizes(rng, n, cap):
    out = []
    while n:
        s = rng.randint(1, min(cap, n))
        out.append(s)
        n -= s
    return out


def _copyable(inst):
    return make_instance(inst.n, [(a, inst.n) for a in inst.class_ids], inst.edges, inst.prefs)


SUITES = {
    "path": (path_edges, Concept.NASH, solve_ns_path),
    "star-derandomized": (star_edges, Concept.NASH, lambda i: solve_ns_star(i, DERANDOMIZED)),
    "star-randomized": (star_edges, Concept.NASH, lambda i: solve_ns_star(i, RANDOMIZED)),
    "components-nash": (None, Concept.NASH, solve_ns_components),
    "components-core": (None, Concept.CORE, solve_core_components),
    "forest-copyable-nash": ("forest", Concept.NASH, solve_ns_copyable_forest),
}


def run(cfg: AgreementConfig) -> dict[str, Counter]:
    out = {}
    for name, (shape, concept, solver) in SUITES.items():
        rng = random.Random(f"{cfg.seed}:{name}")
        tally = Counter()
        for _ in range(cfg.count):
            n = rng.randint(1, cfg.max_n)
            if shape is None:
                edges = random_component_edges(rng, _sizes(rng, n, 4), dense=True)
            elif shape == "forest":
                edges = random_forest_edges(rng, n)
            else:
                edges = shape(n)
            inst = random_instance(rng, n, rng.randint(1, cfg.max_p), edges,
                                   q_approve=rng.choice([0.2, 0.4, 0.7]), levels=2)
            if shape == "forest":
                inst = _copyable(inst)
            truth = oracle_find_stable(inst, concept, max_n=n).found
            got = solver(inst).found
            tally["agree" if truth == got else "DISAGREE"] += 1
            tally["found" if truth else "none"] += 1
        out[name] = tally
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(AgreementConfig()).items():
        parser.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = AgreementConfig(**vars(parser.parse_args()))
    start = time.perf_counter()
    for name, tally in run(cfg).items():
        print(f"{name:<22} " + ", ".join(f"{k}={v}" for k, v in sorted(tally.items())))
    print(f"elapsed {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
