"""Exhaustive ground truth for desk-scale instances.

Assignments are generated player by player in breadth-first order of each
component.  A player either stays void, joins a group already opened in its
component, or opens a group on the next unused copy of some class, so every
assignment is produced once per copy relabelling.  A group that is split into
pieces is kept alive only while each piece still touches an unassigned
player; anything still disconnected at the end is dropped.
"""
from __future__ import annotations

import enum
import os
import time
from dataclasses import dataclass, field
from typing import Iterator

from .model import Assignment, Instance, connected_components
from .stability import Concept, is_stable

DEFAULT_MAX_N = 10


class Status(enum.Enum):
    FOUND = "FOUND"
    NONE_EXISTS = "NONE_EXISTS"


@dataclass
class SolveOutcome:
    status: Status
    assignment: Assignment | None = None
    method: str = ""
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


class OracleBoundError(ValueError):
    pass


def oracle_bound(max_n: int | None = None) -> int:
    if max_n is not None:
        return max_n
    return int(os.environ.get("GGASP_MAX_ORACLE_N", DEFAULT_MAX_N))


def _check_bound(inst: Instance, max_n: int | None) -> None:
    bound = oracle_bound(max_n)
    if inst.n > bound:
        raise OracleBoundError(
            f"oracle limited to n <= {bound} (n={inst.n}); raise --max-oracle-n to override"
        )


class _Group:
    __slots__ = ("cls", "copy", "members", "sizes")

    def __init__(self, cls, copy, members, sizes):
        self.cls = cls
        self.copy = copy
        self.members = members
        self.sizes = sizes


def _pieces_alive(adj, members: set[int], unassigned: set[int]) -> bool:
    """False if the group is split and some piece can no longer be reconnected."""
    left = set(members)
    first = True
    while left:
        s = left.pop()
        piece = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in left:
                    left.discard(w)
                    piece.add(w)
                    stack.append(w)
        if first and not left:
            return True
        first = False
        if not any(adj[v] & unassigned for v in piece):
            return False
    return True


def enumerate_feasible_assignments(
    inst: Instance, *, max_n: int | None = None, ir_only: bool = False
) -> Iterator[Assignment]:
    """Every feasible assignment once, up to relabelling copies of a class.

    With ``ir_only`` only individually rational assignments are produced;
    groups whose members share no acceptable size are cut early.
    """
    _check_bound(inst, max_n)
    adj = inst.adjacency
    comps = connected_components(inst)
    comp_of = {}
    order: list[int] = []
    for cid, comp in enumerate(comps):
        for v in _bfs(inst, comp[0]):
            comp_of[v] = cid
            order.append(v)
    comp_size = [len(comps[comp_of[v]]) for v in range(inst.n)]

    def acceptable(i: int, a: str) -> frozenset[int]:
        return frozenset(k for k in range(1, comp_size[i] + 1) if inst.rank(i, (a, k)) >= 0)

    accept = {(i, a): acceptable(i, a) for i in range(inst.n) for a in inst.class_ids} if ir_only else {}

    slots: list = [None] * inst.n
    groups: list[_Group] = []
    used = {a: 0 for a in inst.class_ids}
    unassigned = set(range(inst.n))

    def viable(g: _Group) -> bool:
        if ir_only and not any(k >= len(g.members) for k in g.sizes):
            return False
        return _pieces_alive(adj, g.members, unassigned)

    def groups_ok(cid: int) -> bool:
        return all(viable(g) for g in groups if comp_of[next(iter(g.members))] == cid)

    def rec(pos: int) -> Iterator[Assignment]:
        if pos == len(order):
            for g in groups:
                if ir_only and len(g.members) not in g.sizes:
                    return
                if not _pieces_alive(adj, g.members, set()):
                    return
            yield Assignment(tuple(slots)).canonical()
            return
        v = order[pos]
        cid = comp_of[v]
        unassigned.discard(v)

        slots[v] = None
        if groups_ok(cid):
            yield from rec(pos + 1)

        for g in list(groups):
            if comp_of[next(iter(g.members))] != cid:
                continue
            old_sizes = g.sizes
            if ir_only:
                g.sizes = old_sizes & accept[(v, g.cls)]
            g.members.add(v)
            slots[v] = (g.cls, g.copy)
            if groups_ok(cid):
                yield from rec(pos + 1)
            g.members.discard(v)
            g.sizes = old_sizes

        for a in inst.class_ids:
            if used[a] >= inst.copies(a):
                continue
            sizes = accept[(v, a)] if ir_only else frozenset()
            if ir_only and not sizes:
                continue
            g = _Group(a, used[a], {v}, sizes)
            used[a] += 1
            groups.append(g)
            slots[v] = (a, g.copy)
            if groups_ok(cid):
                yield from rec(pos + 1)
            groups.pop()
            used[a] -= 1

        slots[v] = None
        unassigned.add(v)

    yield from rec(0)


def _bfs(inst: Instance, root: int) -> list[int]:
    order = [root]
    seen = {root}
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for w in sorted(inst.adjacency[v]):
            if w not in seen:
                seen.add(w)
                order.append(w)
    return order


def oracle_find_stable(
    inst: Instance, concept: Concept = Concept.NASH, *, max_n: int | None = None
) -> SolveOutcome:
    start = time.perf_counter()
    for pi in enumerate_feasible_assignments(inst, max_n=max_n, ir_only=True):
        if is_stable(inst, pi, concept):
            return SolveOutcome(Status.FOUND, pi, "oracle", time.perf_counter() - start)
    return SolveOutcome(Status.NONE_EXISTS, None, "oracle", time.perf_counter() - start)


def oracle_count_stable(
    inst: Instance, concept: Concept = Concept.NASH, *, max_n: int | None = None
) -> int:
    return sum(
        1
        for pi in enumerate_feasible_assignments(inst, max_n=max_n, ir_only=True)
        if is_stable(inst, pi, concept)
    )
