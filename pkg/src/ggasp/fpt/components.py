"""Nash and core stability on graphs with small connected components.

Each component is solved exhaustively: every mapping of its players to
activities or void is tried once.  A surviving local assignment is summarised
by the activities it uses and the unused activities that somebody in the
component would move to (alone for Nash stability, as a blocking coalition
for the core).  It fits a global guess B of used activities iff it uses a
subset of B and every such tempting activity lies in B, i.e. is taken by
another component and so out of reach.  A subset dynamic program then
stitches components together.
"""
from __future__ import annotations

import time
from ..model import Assignment, Instance, connected_components, is_connected_set, is_forest, make_instance
from ..oracle import SolveOutcome, Status, enumerate_feasible_assignments
from ..stability import check_core_forest, check_individually_rational, find_ns_deviation, has_strong_block
from .path import _require_single_copies, subsets_by_size

DEFAULT_MAX_COMPONENT = 6


def _local_assignments(inst: Instance, comp: tuple[int, ...]):
    """Feasible, individually rational maps of ``comp`` with their class groups."""
    pos = {v: q for q, v in enumerate(comp)}
    sub = make_instance(
        len(comp),
        inst.activities,
        [(pos[i], pos[j]) for i, j in inst.edges if i in pos and j in pos],
        [{alt: r for alt, r in inst.prefs[v].items() if alt.size <= len(comp)} for v in comp],
    )
    for local in enumerate_feasible_assignments(sub, max_n=len(comp), ir_only=True):
        labels = {v: (None if local[pos[v]] is None else local[pos[v]][0]) for v in comp}
        groups: dict[str, list[int]] = {}
        for v in comp:
            if labels[v] is not None:
                groups.setdefault(labels[v], []).append(v)
        yield labels, groups


def shared_parts(inst: Instance) -> list[tuple[int, ...]]:
    """Components after dropping edges whose endpoints accept no common
    alternative.  No individually rational group and no blocking coalition
    can use such an edge, so for the core the parts are independent."""
    keep = []
    for i, j in sorted(inst.edges):
        common = [alt for alt, r in inst.prefs[i].items() if r >= 0 and inst.rank(j, alt) >= 0]
        if common:
            keep.append((i, j))
    pruned = make_instance(inst.n, inst.activities, keep, inst.prefs)
    return connected_components(pruned)


def _connected_subsets(inst: Instance, comp: tuple[int, ...]) -> list[frozenset[int]]:
    out = []
    m = len(comp)
    for mask in range(1, 1 << m):
        s = frozenset(comp[b] for b in range(m) if mask >> b & 1)
        if is_connected_set(inst, s):
            out.append(s)
    return out


def _ns_summary(inst, comp, labels, groups):
    """(used mask, tempting mask) for a local map, or None if a move inside
    the component already breaks Nash stability."""
    idx = inst.class_index
    adj = inst.adjacency
    used = 0
    for a in groups:
        used |= 1 << idx[a]
    tempting = 0
    for v in comp:
        a = labels[v]
        here = inst.rank(v, (a, len(groups[a])) if a is not None else (None, 1))
        for b, members in groups.items():
            if b != a and adj[v] & set(members) and inst.rank(v, (b, len(members) + 1)) > here:
                return None
        for b in inst.class_ids:
            if b not in groups and inst.rank(v, (b, 1)) > here:
                tempting |= 1 << idx[b]
    return used, tempting


def _core_summary(inst, comp, labels, groups, subsets):
    idx = inst.class_index
    used = 0
    for a in groups:
        used |= 1 << idx[a]
    here = {
        v: inst.rank(v, (labels[v], len(groups[labels[v]])) if labels[v] is not None else (None, 1))
        for v in comp
    }
    tempting = 0
    for s in subsets:
        for b in inst.class_ids:
            if b in groups and not set(groups[b]) <= s:
                continue
            if all(inst.rank(v, (b, len(s))) > here[v] for v in s):
                if b in groups:
                    return None
                tempting |= 1 << idx[b]
    return used, tempting


def _solve_components(
    inst: Instance, concept: str, max_component: int, split: bool = False
) -> SolveOutcome:
    _require_single_copies(inst)
    comps = shared_parts(inst) if split else connected_components(inst)
    c = max(len(comp) for comp in comps)
    if c > max_component:
        raise ValueError(f"largest component has {c} players; bound is {max_component}")
    start = time.perf_counter()
    p = inst.p

    # per component: (used, tempting) -> first local map with that summary
    tables = []
    for comp in comps:
        subsets = _connected_subsets(inst, comp) if concept == "core" else None
        table: dict[tuple[int, int], dict] = {}
        for labels, groups in _local_assignments(inst, comp):
            if concept == "core":
                summary = _core_summary(inst, comp, labels, groups, subsets)
            else:
                summary = _ns_summary(inst, comp, labels, groups)
            if summary is not None and summary not in table:
                table[summary] = labels
        tables.append(table)

    for chosen in subsets_by_size(list(range(p))):
        bmask = sum(1 << c_ for c_ in chosen)
        # reach[mask] = back pointer (previous mask, local map)
        reach: list[dict[int, tuple]] = [{0: None}]
        for table in tables:
            fits = {}
            for (used, tempting), labels in table.items():
                if used & ~bmask or tempting & ~bmask:
                    continue
                fits.setdefault(used, labels)
            nxt: dict[int, tuple] = {}
            for prev in reach[-1]:
                for used, labels in fits.items():
                    if prev & used:
                        continue
                    key = prev | used
                    if key not in nxt:
                        nxt[key] = (prev, labels)
            if not nxt:
                break
            reach.append(nxt)
        else:
            if bmask in reach[-1]:
                pi = _trace(inst, reach, bmask)
                _certify(inst, pi, concept)
                used = sorted(inst.class_ids[c_] for c_ in chosen)
                return SolveOutcome(
                    Status.FOUND, pi, f"components-{concept}", time.perf_counter() - start, {"B": used}
                )
    return SolveOutcome(Status.NONE_EXISTS, None, f"components-{concept}", time.perf_counter() - start)


def _trace(inst: Instance, reach, bmask: int) -> Assignment:
    slots: list = [None] * inst.n
    mask = bmask
    for layer in range(len(reach) - 1, 0, -1):
        prev, labels = reach[layer][mask]
        for v, a in labels.items():
            slots[v] = None if a is None else (a, 0)
        mask = prev
    return Assignment(tuple(slots))


def _certify(inst: Instance, pi: Assignment, concept: str) -> None:
    if check_individually_rational(inst, pi):
        raise RuntimeError("components solver produced an IR violation")
    if concept == "nash" and find_ns_deviation(inst, pi) is not None:
        raise RuntimeError("components solver produced an NS-deviation")
    if concept == "core" and (check_core_forest(inst, pi) if is_forest(inst) else has_strong_block(inst, pi)):
        raise RuntimeError("components solver produced a blocked assignment")


def solve_ns_components(inst: Instance, *, max_component: int = DEFAULT_MAX_COMPONENT) -> SolveOutcome:
    return _solve_components(inst, "nash", max_component)


def solve_core_components(
    inst: Instance, *, max_component: int = DEFAULT_MAX_COMPONENT, split: bool = False
) -> SolveOutcome:
    """With ``split`` the graph is first cut into :func:`shared_parts`, which
    keeps connected instances with little preference overlap tractable."""
    return _solve_components(inst, "core", max_component, split)
