"""Nash stability on a path with single-copy activities.

For every set B of activities to be used, a left-to-right dynamic program
tracks (activities opened so far, alternative of the current group, players
already in it).  Unused activities only matter through the best alternative
a player could take alone, which is fixed once B is fixed.
"""
from __future__ import annotations

import time
from itertools import combinations

from ..model import VOID_ALT, Assignment, Instance, path_order
from ..oracle import SolveOutcome, Status
from ..stability import check_individually_rational, find_ns_deviation


def _require_single_copies(inst: Instance) -> None:
    multi = [a for a, c in inst.activities if c != 1]
    if multi:
        raise ValueError(f"classes {multi} have more than one copy")


def subsets_by_size(items: list[int]):
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def solve_ns_path(inst: Instance) -> SolveOutcome:
    order = path_order(inst)
    if order is None:
        raise ValueError("solve_ns_path needs a path")
    _require_single_copies(inst)
    start = time.perf_counter()
    classes = inst.class_ids
    p = len(classes)
    idx_of = inst.class_index

    # acceptable[q]: (alternative, class bit, rank) for non-void alternatives
    # the player at position q does not rank below void
    acceptable = []
    for v in order:
        alts = [
            (alt, 1 << idx_of[alt.activity], r)
            for alt, r in sorted(inst.prefs[v].items())
            if r >= 0
        ]
        acceptable.append(alts)
    solo = [[inst.rank(v, (a, 1)) for a in classes] for v in order]

    for chosen in subsets_by_size(list(range(p))):
        bmask = 0
        for idx in chosen:
            bmask |= 1 << idx
        found = _path_dp(inst, order, bmask, acceptable, solo)
        if found is not None:
            pi = _to_assignment(inst, order, found)
            if check_individually_rational(inst, pi) or find_ns_deviation(inst, pi) is not None:
                raise RuntimeError("path dynamic program produced an unstable assignment")
            used = sorted(classes[idx] for idx in chosen)
            return SolveOutcome(
                Status.FOUND, pi, "path", time.perf_counter() - start, {"B": used}
            )
    return SolveOutcome(Status.NONE_EXISTS, None, "path", time.perf_counter() - start)


def _path_dp(inst, order, bmask, acceptable, solo):
    """Groups ``[(alternative, positions)]`` of a Nash stable assignment using
    exactly the activities in ``bmask``, or None."""
    n = len(order)
    prefs = [inst.prefs[v] for v in order]

    def rank(q: int, a, k: int) -> int:
        return 0 if a is None else prefs[q].get((a, k), -1)

    # best rank each player can get alone outside B (void included)
    floor = []
    for q in range(n):
        best = 0
        for c, r in enumerate(solo[q]):
            if not bmask >> c & 1 and r > best:
                best = r
        floor.append(best)

    # starts[q]: (alternative, bit) position q may open a group with
    starts = []
    for q in range(n):
        opts = [(VOID_ALT, 0)] if floor[q] <= 0 else []
        opts += [
            (alt, b)
            for alt, b, r in acceptable[q]
            if bmask & b and alt.size <= n - q and r >= floor[q]
        ]
        starts.append(opts)

    layers: list[dict] = [{(b, alt, 1): None for alt, b in starts[0]}]
    for q in range(1, n):
        nxt: dict = {}
        for state in layers[-1]:
            opened, alt, t = state
            a, k = alt
            if t < k:
                if rank(q, a, k) >= floor[q]:
                    key = (opened, alt, t + 1)
                    if key not in nxt:
                        nxt[key] = state
                continue
            stay_left = rank(q - 1, a, k)
            for new, b in starts[q]:
                if opened & b:
                    continue
                if b and stay_left < rank(q - 1, new.activity, new.size + 1):
                    continue
                if a is not None and rank(q, *new) < rank(q, a, k + 1):
                    continue
                key = (opened | b, new, 1)
                if key not in nxt:
                    nxt[key] = state
        if not nxt:
            return None
        layers.append(nxt)

    final = next(
        (s for s in layers[-1] if s[0] == bmask and s[2] == s[1].size), None
    )
    if final is None:
        return None

    labels = [None] * n
    state = final
    for q in range(n - 1, -1, -1):
        labels[q] = state[1]
        state = layers[q][state]
    groups = []
    q = 0
    while q < n:
        alt = labels[q]
        groups.append((alt, list(range(q, q + alt.size))))
        q += alt.size
    return groups


def _to_assignment(inst: Instance, order: list[int], groups) -> Assignment:
    slots: list = [None] * inst.n
    for alt, positions in groups:
        if alt.activity is None:
            continue
        for q in positions:
            slots[order[q]] = (alt.activity, 0)
    return Assignment(tuple(slots))
