"""Check the hardness constructions on pools of random sources.

    python scripts/verify_reductions.py --rainbow 200 --mmm 200 --sat 100
"""
import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from ggasp.reductions import (
    generate,
    is_yes,
    random_formula_3b2,
    random_mmm,
    random_rainbow_path,
    sat_witness,
    verify_reduction,
)
from ggasp.reductions.sources import satisfying_assignment
from ggasp.reductions.verify import certify
from ggasp.stability import Concept


@dataclass
class PoolConfig:
    rainbow: int = 200
    max_edges: int = 6
    mmm: int = 200
    max_side: int = 4
    sat: int = 100
    seed: int = 0


def run(cfg: PoolConfig) -> dict[str, Counter]:
    rng = random.Random(cfg.seed)
    tally: dict[str, Counter] = {}
    for concept in (Concept.NASH, Concept.CORE):
        t = tally.setdefault(f"rainbow/{concept.value}", Counter())
        for _ in range(cfg.rainbow):
            src = random_rainbow_path(rng, rng.randint(1, cfg.max_edges))
            t["yes" if is_yes(src) else "no"] += 1
            t["ok" if verify_reduction(src, concept) else "FAILED"] += 1
        t = tally.setdefault(f"mmm/{concept.value}", Counter())
        for _ in range(cfg.mmm):
            src = random_mmm(rng, rng.randint(1, cfg.max_side), rng.randint(1, cfg.max_side))
            t["yes" if is_yes(src) else "no"] += 1
            t["ok" if verify_reduction(src, concept) else "FAILED"] += 1
        t = tally.setdefault(f"3sat/{concept.value}", Counter())
        for _ in range(cfg.sat):
            src = random_formula_3b2(rng, 3)
            truth = satisfying_assignment(src)
            if truth is None:
                t["unsatisfiable (skipped)"] += 1
                continue
            inst = generate(src, concept)
            t["witness ok" if certify(inst, sat_witness(src, inst, concept, truth), concept) else "FAILED"] += 1
    return tally


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(PoolConfig()).items():
        parser.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = PoolConfig(**vars(parser.parse_args()))
    start = time.perf_counter()
    for family, counts in run(cfg).items():
        print(f"{family:<14} " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    print(f"elapsed {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
