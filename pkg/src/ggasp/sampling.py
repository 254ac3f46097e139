"""Random instances for tests and benchmarks.

Two preference models:

``bucket``
    For each (player, class, size bucket) the player approves every size in
    the bucket with probability ``q_approve``; buckets are ``{1}``,
    ``{2..ceil(n/2)}`` and ``{> ceil(n/2)}``.  Approved sizes get a random
    rank in ``1..levels``.
``dense``
    Every (player, class, size) gets a rank drawn from ``-1..levels``,
    so ties with the void alternative (rank 0) occur too.
"""
from __future__ import annotations

import math
import random
from typing import Sequence

from .model import Instance, make_instance


def path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def star_edges(n: int, center: int = 0) -> list[tuple[int, int]]:
    return [(center, v) for v in range(n) if v != center]


def random_tree_edges(rng: random.Random, nodes: Sequence[int]) -> list[tuple[int, int]]:
    nodes = list(nodes)
    rng.shuffle(nodes)
    return [(nodes[idx], nodes[rng.randrange(idx)]) for idx in range(1, len(nodes))]


def random_forest_edges(rng: random.Random, n: int, keep: float = 0.8) -> list[tuple[int, int]]:
    """A random spanning tree with each edge kept with probability ``keep``."""
    return [e for e in random_tree_edges(rng, range(n)) if rng.random() < keep]


def random_component_edges(
    rng: random.Random, sizes: Sequence[int], dense: bool = False
) -> list[tuple[int, int]]:
    """Disjoint connected components of the given sizes (trees unless ``dense``)."""
    edges = []
    offset = 0
    for s in sizes:
        nodes = list(range(offset, offset + s))
        tree = random_tree_edges(rng, nodes)
        edges.extend(tree)
        if dense:
            present = {frozenset(e) for e in tree}
            for i in nodes:
                for j in nodes:
                    if i < j and frozenset((i, j)) not in present and rng.random() < 0.3:
                        edges.append((i, j))
        offset += s
    return edges


def random_prefs(
    rng: random.Random,
    n: int,
    classes: Sequence[str],
    *,
    model: str = "bucket",
    q_approve: float = 0.3,
    levels: int = 3,
    max_size: int | None = None,
) -> list[dict]:
    max_size = n if max_size is None else max_size
    half = math.ceil(n / 2)
    buckets = [range(1, 2), range(2, half + 1), range(half + 1, n + 1)]
    prefs = []
    for _ in range(n):
        table = {}
        for a in classes:
            if model == "dense":
                for k in range(1, max_size + 1):
                    r = rng.randint(-1, levels)
                    if r != -1:
                        table[(a, k)] = r
                continue
            for bucket in buckets:
                if rng.random() < q_approve:
                    for k in bucket:
                        if k <= max_size:
                            table[(a, k)] = rng.randint(1, levels)
        prefs.append(table)
    return prefs


def class_names(p: int) -> list[str]:
    return [chr(ord("a") + idx) if p <= 26 else f"a{idx}" for idx in range(p)]


def random_instance(
    rng: random.Random,
    n: int,
    p: int,
    edges: Sequence[tuple[int, int]],
    *,
    copies: int = 1,
    model: str = "bucket",
    q_approve: float = 0.3,
    levels: int = 3,
    max_size: int | None = None,
) -> Instance:
    classes = class_names(p)
    prefs = random_prefs(
        rng, n, classes, model=model, q_approve=q_approve, levels=levels, max_size=max_size
    )
    return make_instance(n, [(a, copies) for a in classes], edges, prefs)
