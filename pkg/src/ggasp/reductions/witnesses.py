"""Stable outcomes built from yes-certificates of the source problems."""
from __future__ import annotations

from ..model import Assignment, Instance
from ..stability import Concept
from .generators import (
    aux_class,
    clause_class,
    color_class,
    lit_class,
    mmm_group_size,
)
from .sources import Formula3B2, Mmm, RainbowPath, max_rainbow_matching, min_maximal_matching


def _slots(inst: Instance, plan: dict[str, str | None]) -> Assignment:
    index = {name: i for i, name in enumerate(inst.names)}
    slots: list = [None] * inst.n
    for name, cls in plan.items():
        if cls is not None:
            slots[index[name]] = (cls, 0)
    return Assignment(tuple(slots))


def rainbow_witness(src: RainbowPath, inst: Instance, concept: Concept) -> Assignment | None:
    """Triples of a k-edge rainbow matching on their color, leftover colors to
    the garbage collectors in ascending order, gadgets void (Nash) or on
    their own auxiliary class (core)."""
    matching = max_rainbow_matching(src)
    if len(matching) < src.k:
        return None
    chosen = matching[: src.k]
    plan: dict[str, str | None] = {}
    for u, v, c in chosen:
        for name in (f"v:{u}", f"e:{u}-{v}", f"v:{v}"):
            plan[name] = color_class(c)
    taken = {c for _, _, c in chosen}
    leftover = sorted(c for c in src.color_list if c not in taken)
    for g, c in enumerate(leftover):
        plan[f"g{g + 1}"] = color_class(c)
    if concept is Concept.CORE:
        for c in src.color_list:
            for r in (1, 2, 3):
                plan[f"{c}.{r}"] = aux_class(c)
    return _slots(inst, plan)


def mmm_witness(src: Mmm, inst: Instance, concept: Concept) -> Assignment | None:
    """A smallest maximal matching; the first unmatched vertex players join
    the center on ``a``; in the core variant the second gadget leaf plays
    ``y`` alone."""
    matching = min_maximal_matching(src)
    if len(matching) > src.k:
        return None
    plan: dict[str, str | None] = {f"v:{v}": f"u:{u}" for u, v in matching}
    matched = {v for _, v in matching}
    free = [v for v in src.V if v not in matched]
    plan["c"] = "a"
    for v in free[: mmm_group_size(src) - 1]:
        plan[f"v:{v}"] = "a"
    if concept is Concept.CORE:
        plan["s2"] = "y"
    return _slots(inst, plan)


def sat_witness(
    src: Formula3B2, inst: Instance, concept: Concept, truth: dict[str, bool]
) -> Assignment:
    if not src.satisfied_by(truth):
        raise ValueError("truth assignment does not satisfy the formula")
    if concept is Concept.NASH:
        return _sat_nash_witness(src, inst, truth)
    return _sat_core_witness(src, inst, truth)


def _variable_part(src: Formula3B2, truth, core: bool) -> tuple[dict, set[str]]:
    plan: dict[str, str | None] = {}
    used: set[str] = set()
    for x in src.variables:
        var = f"var:{x}"
        on, off = (True, False) if truth[x] else (False, True)
        tag_on = x if on else f"~{x}"
        tag_off = f"~{x}" if on else x
        for occ in (1, 2):
            cls = lit_class(x, on, occ)
            plan[f"{tag_on}{occ}"] = cls
            used.add(cls)
            plan[f"{tag_off}{occ}"] = var
        if core:
            plan[tag_on] = f"b:{tag_on}"
            plan[tag_off] = var
    return plan, used


def _sat_nash_witness(src, inst, truth) -> Assignment:
    plan, used = _variable_part(src, truth, core=False)
    for idx, row in enumerate(src.occurrences()):
        lits = [lit_class(*occ) for occ in row]
        j = next(r for r, l in enumerate(lits) if l in used)
        plan[f"s{idx}"] = clause_class(idx)
        plan[f"c{idx}.{j + 1}"] = clause_class(idx)
        for r, l in enumerate(lits):
            if r != j and l not in used:
                plan[f"c{idx}.{r + 1}"] = l
                used.add(l)
    return _slots(inst, plan)


def _sat_core_witness(src, inst, truth) -> Assignment:
    plan, used = _variable_part(src, truth, core=True)
    for idx, row in enumerate(src.occurrences()):
        l1, l2, l3 = (lit_class(*occ) for occ in row)
        c1, c2, c3 = (f"c{idx}.{r}" for r in (1, 2, 3))
        nodes = [(l1, (c1, c2)), (l2, (c2, c3)), (l1, (c3,)), (l3, (c2, c3))]
        nodes = [nd for nd in nodes if nd[0] not in used]
        if not nodes:
            continue
        cls, members = _source_vertex(inst, nodes)
        for name in members:
            plan[name] = cls
        used.add(cls)
    return _slots(inst, plan)


def _source_vertex(inst: Instance, nodes):
    """First vertex that no other vertex strongly blocks.

    Arcs (a, S) -> (b, T) for a common member preferring (a, |S|) can form a
    2-cycle between the two pairs on {c2, c3} when only the first literal is
    already taken, so a digraph source need not exist.  Either pair is still
    unblocked, which is all the outcome needs.
    """
    index = {name: i for i, name in enumerate(inst.names)}

    def blocks(x, y) -> bool:
        (a, s), (b, t) = x, y
        if a == b and not set(t) <= set(s):
            return False
        here = {m: (b, len(t)) if m in t else (None, 1) for m in s}
        return all(inst.rank(index[m], (a, len(s))) > inst.rank(index[m], here[m]) for m in s)

    for y in nodes:
        if not any(blocks(x, y) for x in nodes if x is not y):
            return y
    raise RuntimeError("every clause vertex is blocked")
