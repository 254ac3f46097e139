"""Polynomial solvers for forests where every activity class is copyable.

With at least n copies per class a spare copy is always available, so the
components of the forest never compete for activities and are solved one at
a time.
"""
from __future__ import annotations

import time

from .model import VOID_ALT, Alternative, Assignment, Instance, connected_components, is_forest
from .oracle import SolveOutcome, Status
from .stability import check_core_forest, check_individually_rational, find_ns_deviation


def _require_copyable_forest(inst: Instance) -> None:
    if not is_forest(inst):
        raise ValueError("communication graph must be a forest")
    bad = [a for a in inst.class_ids if not inst.is_copyable(a)]
    if bad:
        raise ValueError(f"classes {bad} have fewer than n={inst.n} copies")


def _rooted(inst: Instance, root: int) -> tuple[list[int], dict[int, list[int]]]:
    """Pre-order of the tree containing ``root`` and each node's children."""
    order = [root]
    children: dict[int, list[int]] = {root: []}
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for w in sorted(inst.adjacency[v]):
            if w not in children:
                children[w] = []
                children[v].append(w)
                order.append(w)
    return order, children


def _materialize(inst: Instance, groups: list[tuple[Alternative, list[int]]]) -> Assignment:
    slots: list = [None] * inst.n
    next_copy = {a: 0 for a in inst.class_ids}
    for alt, members in sorted(groups, key=lambda g: min(g[1])):
        if alt.activity is None:
            continue
        copy = next_copy[alt.activity]
        next_copy[alt.activity] += 1
        for v in members:
            slots[v] = (alt.activity, copy)
    return Assignment(tuple(slots))


# ---------------------------------------------------------------------------
# Nash stability


def _ns_tree(inst: Instance, root: int) -> list[tuple[Alternative, list[int]]] | None:
    """Nash stable grouping of one tree, or None.

    ``table[i][alt][t]`` is reachable when the subtree of ``i`` can be
    assigned so that the group of ``i`` will end up with alternative ``alt``,
    currently holds ``t`` players of that subtree, its members weakly prefer
    ``alt`` to everything they could deviate to inside the subtree, and
    nobody outside that group has an NS-deviation.  Children are merged one
    at a time; ``stages[i][s]`` keeps the table after ``s`` children, with a
    back pointer per entry.
    """
    order, children = _rooted(inst, root)
    size = len(order)
    alts = [VOID_ALT] + [Alternative(a, k) for a in inst.class_ids for k in range(1, size + 1)]
    rank = inst.rank

    stages: dict[int, list[dict]] = {}
    for i in reversed(order):
        best_single = max([0] + [rank(i, (a, 1)) for a in inst.class_ids])
        cur = {alt: {1: None} for alt in alts if rank(i, alt) >= best_single}
        history = [cur]
        for j in children[i]:
            final_j = stages[j][-1]
            sealed = [alt for alt, ts in final_j.items() if alt.size in ts]
            nxt: dict = {}
            for alt, ts in cur.items():
                a, k = alt
                entries: dict = {}
                for other in sealed:
                    b, l = other
                    if b is not None and rank(i, alt) < rank(i, (b, l + 1)):
                        continue
                    if a is not None and rank(j, other) < rank(j, (a, k + 1)):
                        continue
                    for t in ts:
                        entries[t] = ("border", other)
                    break
                if a is not None and alt in final_j:
                    for x in ts:
                        for y in final_j[alt]:
                            if x + y <= k and x + y not in entries:
                                entries[x + y] = ("fuse", x, y)
                if entries:
                    nxt[alt] = entries
            cur = nxt
            history.append(cur)
        stages[i] = history

    top = stages[root][-1]
    accepted = next((alt for alt in alts if alt in top and alt.size in top[alt]), None)
    if accepted is None:
        return None

    groups: list[tuple[Alternative, list[int]]] = []

    def rebuild(i: int, stage: int, alt: Alternative, t: int) -> list[int]:
        if stage == 0:
            return [i]
        back = stages[i][stage][alt][t]
        j = children[i][stage - 1]
        last_j = len(stages[j]) - 1
        if back[0] == "border":
            members = rebuild(i, stage - 1, alt, t)
            other = back[1]
            groups.append((other, rebuild(j, last_j, other, other.size)))
            return members
        _, x, y = back
        return rebuild(i, stage - 1, alt, x) + rebuild(j, last_j, alt, y)

    groups.append((accepted, rebuild(root, len(stages[root]) - 1, accepted, accepted.size)))
    return groups


def solve_ns_copyable_forest(inst: Instance) -> SolveOutcome:
    """Decide Nash stability on a copyable forest; reconstruct a witness."""
    _require_copyable_forest(inst)
    start = time.perf_counter()
    groups: list = []
    for comp in connected_components(inst):
        part = _ns_tree(inst, comp[0])
        if part is None:
            return SolveOutcome(Status.NONE_EXISTS, None, "forest-copyable", time.perf_counter() - start)
        groups.extend(part)
    pi = _materialize(inst, groups)
    if check_individually_rational(inst, pi) or find_ns_deviation(inst, pi) is not None:
        raise RuntimeError("forest NS dynamic program produced an unstable assignment")
    return SolveOutcome(Status.FOUND, pi, "forest-copyable", time.perf_counter() - start)


# ---------------------------------------------------------------------------
# core


def _core_tree(inst: Instance, root: int) -> list[tuple[Alternative, list[int]]]:
    """Bottom-up guarantee levels, then top-down coalition commitment.

    ``level[i]`` is the best rank player ``i`` can secure with a connected
    coalition whose highest node is ``i`` and whose other members each get at
    least their own level.  Committing these coalitions from the root down
    gives every top player exactly its level and every other member at least
    its level, so no coalition can strictly improve all of its members.
    """
    order, children = _rooted(inst, root)
    subtree: dict[int, list[int]] = {}
    for v in reversed(order):
        subtree[v] = [v] + [w for c in children[v] for w in subtree[c]]

    level: dict[int, int] = {}
    choice: dict[int, Alternative] = {}
    for i in reversed(order):
        best, best_alt = 0, VOID_ALT
        below = subtree[i]
        for a in inst.class_ids:
            for k in range(1, len(below) + 1):
                r = inst.rank(i, (a, k))
                if r <= best:
                    continue
                if len(_reach(inst, i, below, a, k, level)) >= k:
                    best, best_alt = r, Alternative(a, k)
        level[i], choice[i] = best, best_alt

    groups: list[tuple[Alternative, list[int]]] = []
    taken: set[int] = set()
    for top in order:
        if top in taken:
            continue
        alt = choice[top]
        if alt.activity is None:
            members = [top]
        else:
            comp = _reach(inst, top, subtree[top], alt.activity, alt.size, level)
            members = _trim(inst, top, comp, alt.size)
        taken.update(members)
        groups.append((alt, members))
    return groups


def _reach(inst: Instance, top: int, below: list[int], a: str, k: int, level: dict[int, int]) -> set[int]:
    """Players connected to ``top`` through members content with ``(a, k)``."""
    allowed = {v for v in below if v == top or inst.rank(v, (a, k)) >= level[v]}
    comp = {top}
    stack = [top]
    while stack:
        v = stack.pop()
        for w in inst.adjacency[v]:
            if w in allowed and w not in comp:
                comp.add(w)
                stack.append(w)
    return comp


def _trim(inst: Instance, top: int, comp: set[int], k: int) -> list[int]:
    comp = set(comp)
    while len(comp) > k:
        leaf = max(v for v in comp if v != top and len(inst.adjacency[v] & comp) == 1)
        comp.remove(leaf)
    return sorted(comp)


def solve_core_copyable_forest(inst: Instance) -> SolveOutcome:
    """Construct a core stable assignment of a copyable forest (always exists)."""
    _require_copyable_forest(inst)
    start = time.perf_counter()
    groups: list = []
    for comp in connected_components(inst):
        groups.extend(_core_tree(inst, comp[0]))
    pi = _materialize(inst, groups)
    if check_individually_rational(inst, pi) or check_core_forest(inst, pi) is not None:
        raise RuntimeError("core construction failed its certificate check")
    return SolveOutcome(Status.FOUND, pi, "forest-copyable", time.perf_counter() - start)
