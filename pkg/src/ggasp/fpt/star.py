"""Nash stability on a star by color coding.

Guess the center's alternative (a, k) and the set B of activities that
leaves play alone.  Leaves are non-adjacent, so a leaf can only be in the
center's group, alone on an activity of B, or void, and each role is a
purely local condition.  What remains is to pick one distinct leaf per
activity of B and exactly k-1 leaves for the center, which a coloring of the
leaves turns into independent per-color counting problems.
"""
from __future__ import annotations

import math
import random
import time
from itertools import combinations

from ..model import VOID_ALT, Alternative, Assignment, Instance, star_center
from ..oracle import SolveOutcome, Status
from ..stability import check_individually_rational, find_ns_deviation
from .hashing import perfect_hash_family
from .path import _require_single_copies

RANDOMIZED = "randomized"
DERANDOMIZED = "derandomized"


def default_trials(m: int, delta: float = 0.01) -> int:
    """Colorings needed so a fixed good coloring is missed with prob <= delta."""
    if m <= 1:
        return 1
    return math.ceil(m**m * math.log(1 / delta))


class _Roles:
    """Which roles each leaf may take for a guessed (a, k) and B."""

    def __init__(self, inst: Instance, leaves, center_alt: Alternative, b_set):
        a, k = center_alt
        unused = [c for c in inst.class_ids if c not in b_set and c != a]
        self.join: dict[int, bool] = {}
        self.void: dict[int, bool] = {}
        self.alone: dict[int, set[str]] = {}
        for v in leaves:
            floor = max([0] + [inst.rank(v, (c, 1)) for c in unused])
            over = inst.rank(v, (a, k + 1)) if a is not None else None
            self.join[v] = a is not None and inst.rank(v, center_alt) >= floor
            self.void[v] = floor <= 0 and (over is None or over <= 0)
            self.alone[v] = {
                b
                for b in b_set
                if inst.rank(v, (b, 1)) >= floor and (over is None or inst.rank(v, (b, 1)) >= over)
            }

    def spread(self, members, chosen) -> tuple[int, int] | None:
        """Range of center-joiners among ``members`` minus ``chosen``."""
        lo = hi = 0
        for v in members:
            if v == chosen:
                continue
            if self.join[v] and self.void[v]:
                hi += 1
            elif self.join[v]:
                lo += 1
                hi += 1
            elif not self.void[v]:
                return None
        return lo, hi


def _center_ok(inst: Instance, c: int, center_alt: Alternative, b_set) -> bool:
    a = center_alt.activity
    r = inst.rank(c, center_alt)
    if r < 0:
        return False
    for b in inst.class_ids:
        if b == a:
            continue
        rival = (b, 2) if b in b_set else (b, 1)
        if inst.rank(c, rival) > r:
            return False
    return True


def _solve_coloring(roles: _Roles, classes: list[list[int]], b_list: list[str], need: int, bind: bool):
    """Choose, per color class, one leaf alone on an activity and a number of
    center-joiners so that every activity is covered once and the joiners
    total ``need``.  With ``bind`` color class h must take activity b_list[h];
    otherwise any bijection between classes and activities is allowed.
    Returns ``[(color, activity, lone leaf, joiners)]`` or None.
    """
    m = len(b_list)
    # options[h][bi] = list of (leaf, lo, hi)
    options = []
    for h, members in enumerate(classes):
        per = []
        for bi, b in enumerate(b_list):
            if bind and bi != h:
                per.append([])
                continue
            opts = []
            for v in members:
                if b in roles.alone[v]:
                    rng_ = roles.spread(members, v)
                    if rng_ is not None:
                        opts.append((v, *rng_))
            per.append(opts)
        options.append(per)

    # layer h: (activity mask, joiners) -> back pointer
    layers = [{(0, 0): None}]
    for h in range(len(classes)):
        nxt = {}
        for (mask, cnt) in layers[-1]:
            for bi in range(m):
                if mask >> bi & 1:
                    continue
                for v, lo, hi in options[h][bi]:
                    for x in range(lo, hi + 1):
                        if cnt + x > need:
                            break
                        key = (mask | 1 << bi, cnt + x)
                        if key not in nxt:
                            nxt[key] = ((mask, cnt), bi, v, x)
        if not nxt:
            return None
        layers.append(nxt)
    goal = ((1 << m) - 1, need)
    if goal not in layers[-1]:
        return None
    picks = []
    key = goal
    for h in range(len(classes), 0, -1):
        prev, bi, v, x = layers[h][key]
        picks.append((h - 1, b_list[bi], v, x))
        key = prev
    return picks


def _assemble(inst, roles, center, center_alt, classes, picks, leaves):
    slots: list = [None] * inst.n
    a = center_alt.activity
    if a is not None:
        slots[center] = (a, 0)
    groups = classes if picks is not None else [leaves]
    plan = {h: (b, v, x) for h, b, v, x in picks} if picks else {0: (None, None, center_alt.size - 1)}
    for h, members in enumerate(groups):
        b, lone, joiners = plan[h]
        if lone is not None:
            slots[lone] = (b, 0)
        rest = [v for v in members if v != lone]
        forced = [v for v in rest if roles.join[v] and not roles.void[v]]
        flexible = [v for v in rest if roles.join[v] and roles.void[v]]
        for v in forced + flexible[: joiners - len(forced)]:
            slots[v] = (a, 0)
    return Assignment(tuple(slots))


def solve_ns_star(
    inst: Instance,
    mode: str = DERANDOMIZED,
    *,
    seed: int = 0,
    trials: int | None = None,
    delta: float = 0.01,
) -> SolveOutcome:
    center = star_center(inst)
    if center is None:
        raise ValueError("solve_ns_star needs a star")
    if mode not in (RANDOMIZED, DERANDOMIZED):
        raise ValueError(f"unknown mode {mode!r}")
    _require_single_copies(inst)
    start = time.perf_counter()
    rng = random.Random(seed)
    leaves = [v for v in range(inst.n) if v != center]
    classes = list(inst.class_ids)
    n = inst.n
    center_alts = [VOID_ALT] + [Alternative(a, k) for a in classes for k in range(1, n + 1)]

    for center_alt in center_alts:
        a, k = center_alt
        if inst.rank(center, center_alt) < 0:
            continue
        others = [c for c in classes if c != a]
        for r in range(0, min(len(others), len(leaves) - (k - 1)) + 1):
            for b_set in combinations(others, r):
                if not _center_ok(inst, center, center_alt, b_set):
                    continue
                roles = _Roles(inst, leaves, center_alt, b_set)
                pi = _search(inst, roles, center, center_alt, list(b_set), leaves, mode, rng, trials, delta)
                if pi is not None:
                    if check_individually_rational(inst, pi) or find_ns_deviation(inst, pi) is not None:
                        raise RuntimeError("star color coding produced an unstable assignment")
                    return SolveOutcome(
                        Status.FOUND,
                        pi,
                        f"star-{mode}",
                        time.perf_counter() - start,
                        {"center": center_alt, "B": sorted(b_set)},
                    )
    return SolveOutcome(Status.NONE_EXISTS, None, f"star-{mode}", time.perf_counter() - start)


def _search(inst, roles, center, center_alt, b_list, leaves, mode, rng, trials, delta):
    need = center_alt.size - 1
    if any(not (roles.join[v] or roles.void[v] or roles.alone[v]) for v in leaves):
        return None
    if not b_list:
        spread = roles.spread(leaves, None)
        if spread is None or not spread[0] <= need <= spread[1]:
            return None
        return _assemble(inst, roles, center, center_alt, None, None, leaves)

    m = len(b_list)
    if mode == DERANDOMIZED:
        colorings = perfect_hash_family(len(leaves), m)
        bind = False
    else:
        count = default_trials(m, delta) if trials is None else trials
        colorings = ([rng.randrange(m) for _ in leaves] for _ in range(count))
        bind = True
    for coloring in colorings:
        classes = [[] for _ in range(m)]
        for v, color in zip(leaves, coloring):
            classes[color].append(v)
        if any(not c for c in classes):
            continue
        picks = _solve_coloring(roles, classes, b_list, need, bind)
        if picks is not None:
            return _assemble(inst, roles, center, center_alt, classes, picks, leaves)
    return None
