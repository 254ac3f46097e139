"""Deterministic m-perfect hash families.

A family of maps ``[N] -> [m]`` is m-perfect when every m-subset of ``[N]`` is
mapped injectively by at least one member.  Small cases are built by seeded
greedy covering and checked against every m-subset; larger domains are first
folded into ``m(m-1)+1`` buckets with the maps ``x -> (a*x mod q) mod r``
(for q prime, some ``a`` separates any m points since the expected number of
collisions is below one) and then composed with a small family.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

FAMILY_SEED = 20170204
DIRECT_LIMIT = 200_000


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def _next_prime(q: int) -> int:
    while not _is_prime(q):
        q += 1
    return q


def _greedy_family(domain: int, m: int) -> list[tuple[int, ...]]:
    subsets = np.array(list(combinations(range(domain), m)), dtype=np.int64)
    full = (1 << m) - 1
    rng = np.random.default_rng([FAMILY_SEED, domain, m])
    family = []
    while len(subsets):
        f = rng.integers(0, m, size=domain)
        covered = np.bitwise_or.reduce(np.left_shift(1, f[subsets]), axis=1) == full
        if covered.any():
            family.append(tuple(int(x) for x in f))
            subsets = subsets[~covered]
    return family


@lru_cache(maxsize=None)
def perfect_hash_family(domain: int, m: int) -> tuple[tuple[int, ...], ...]:
    if m < 0 or m > domain:
        raise ValueError(f"no {m}-perfect family on a domain of {domain}")
    if m == 0:
        return ((0,) * domain,)
    if m == 1:
        return ((0,) * domain,)
    if comb(domain, m) <= DIRECT_LIMIT:
        return tuple(_greedy_family(domain, m))
    buckets = m * (m - 1) + 1
    inner = perfect_hash_family(buckets, m)
    q = _next_prime(domain)
    family = []
    for a in range(1, q):
        fold = [(a * x) % q % buckets for x in range(domain)]
        for g in inner:
            family.append(tuple(g[b] for b in fold))
    return tuple(dict.fromkeys(family))


def is_perfect(family, domain: int, m: int) -> bool:
    """Exhaustive check (test helper)."""
    for s in combinations(range(domain), m):
        if not any(len({f[x] for x in s}) == m for f in family):
            return False
    return True
