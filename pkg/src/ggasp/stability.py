"""Certifying checkers: feasibility, individual rationality, Nash and core stability.

Every negative verdict comes with a witness (a deviating player or a blocking
coalition) that can be re-verified independently with ``verify_deviation`` and
``verify_block``.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Iterator

from .model import (
    Alternative,
    Assignment,
    Instance,
    InstanceError,
    is_connected_set,
    is_forest,
    validate_assignment,
)

DEFAULT_BLOCK_SEARCH_N = 20


class Concept(enum.Enum):
    NASH = "nash"
    CORE = "core"
    IR = "ir"


@dataclass(frozen=True)
class Deviation:
    player: int
    target: tuple[str, int]

    def to_dict(self) -> dict:
        return {"player": self.player, "activity": self.target[0], "copy": self.target[1]}


@dataclass(frozen=True)
class BlockingCertificate:
    coalition: frozenset[int]
    activity: tuple[str, int]

    def to_dict(self) -> dict:
        return {
            "coalition": sorted(self.coalition),
            "activity": self.activity[0],
            "copy": self.activity[1],
        }


@dataclass
class StabilityReport:
    feasible: bool
    ir_violations: list[int] = field(default_factory=list)
    ns_witness: Deviation | None = None
    core_witness: BlockingCertificate | None = None

    @property
    def individually_rational(self) -> bool:
        return self.feasible and not self.ir_violations

    @property
    def nash_stable(self) -> bool:
        return self.individually_rational and self.ns_witness is None

    @property
    def core_stable(self) -> bool:
        return self.individually_rational and self.core_witness is None

    def holds(self, concept: Concept) -> bool:
        return {
            Concept.IR: self.individually_rational,
            Concept.NASH: self.nash_stable,
            Concept.CORE: self.core_stable,
        }[concept]

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "individually_rational": self.individually_rational,
            "ir_violations": list(self.ir_violations),
            "nash_stable": self.nash_stable,
            "ns_witness": self.ns_witness.to_dict() if self.ns_witness else None,
            "core_stable": self.core_stable,
            "core_witness": self.core_witness.to_dict() if self.core_witness else None,
        }


def check_assignment_feasible(inst: Instance, pi: Assignment) -> bool:
    validate_assignment(inst, pi)
    return all(is_connected_set(inst, g) for g in pi.groups.values())


def check_individually_rational(inst: Instance, pi: Assignment) -> list[int]:
    return [
        i
        for i in range(inst.n)
        if pi[i] is not None and inst.rank(i, pi.alternative(i)) < 0
    ]


def _spare_copy(inst: Instance, pi: Assignment, a: str) -> int | None:
    used = pi.used_copies(a)
    for j in range(inst.copies(a)):
        if j not in used:
            return j
    return None


def _targets(inst: Instance, pi: Assignment) -> Iterator[tuple[str, int]]:
    """Used copies of every class plus its lowest spare copy, in class order."""
    for a in inst.class_ids:
        used = sorted(pi.used_copies(a))
        spare = _spare_copy(inst, pi, a)
        targets = used + ([spare] if spare is not None else [])
        for j in sorted(targets):
            yield (a, j)


def find_ns_deviation(inst: Instance, pi: Assignment) -> Deviation | None:
    """First NS-deviation in (player, class, copy) order, or None."""
    groups = pi.groups
    adj = inst.adjacency
    targets = list(_targets(inst, pi))
    for i in range(inst.n):
        current = inst.rank(i, pi.alternative(i))
        for a, j in targets:
            if pi[i] == (a, j):
                continue
            members = groups.get((a, j), frozenset())
            if members and not (adj[i] & members):
                continue
            if inst.rank(i, (a, len(members) + 1)) > current:
                return Deviation(i, (a, j))
    return None


def verify_deviation(inst: Instance, pi: Assignment, dev: Deviation) -> bool:
    i, target = dev.player, dev.target
    if pi[i] == target:
        return False
    members = pi.groups.get(target, frozenset())
    if members and not is_connected_set(inst, members | {i}):
        return False
    after = Alternative(target[0], len(members) + 1)
    return inst.rank(i, after) > inst.rank(i, pi.alternative(i))


def verify_block(inst: Instance, pi: Assignment, cert: BlockingCertificate) -> bool:
    s = set(cert.coalition)
    if not s or not is_connected_set(inst, s):
        return False
    if not pi.groups.get(cert.activity, frozenset()) <= s:
        return False
    alt = Alternative(cert.activity[0], len(s))
    return all(inst.rank(i, alt) > inst.rank(i, pi.alternative(i)) for i in s)


def _connected_supersets(adj, base: frozenset[int], allowed: frozenset[int], size: int):
    """Connected sets of exactly ``size`` players, containing ``base``, inside ``allowed``."""
    if len(base) > size:
        return
    seen = {base}
    stack = [base]
    while stack:
        cur = stack.pop()
        if len(cur) == size:
            yield cur
            continue
        frontier = set()
        for v in cur:
            frontier |= adj[v]
        for w in (frontier & allowed) - cur:
            nxt = cur | {w}
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)


def _strong_blocks(inst: Instance, pi: Assignment) -> Iterator[BlockingCertificate]:
    adj = inst.adjacency
    current = [inst.rank(i, pi.alternative(i)) for i in range(inst.n)]
    for a, j in _targets(inst, pi):
        base = pi.groups.get((a, j), frozenset())
        for k in range(max(len(base), 1), inst.n + 1):
            alt = (a, k)
            willing = frozenset(i for i in range(inst.n) if inst.rank(i, alt) > current[i])
            if not base <= willing or len(willing) < k:
                continue
            seeds = [base] if base else [frozenset((v,)) for v in sorted(willing)]
            seen: set[frozenset[int]] = set()
            for seed in seeds:
                for s in _connected_supersets(adj, seed, willing, k):
                    if s not in seen:
                        seen.add(s)
                        yield BlockingCertificate(s, (a, j))


def _block_search_limit() -> int:
    return int(os.environ.get("GGASP_MAX_BLOCK_N", DEFAULT_BLOCK_SEARCH_N))


def find_strong_block(
    inst: Instance, pi: Assignment, *, max_n: int | None = None
) -> BlockingCertificate | None:
    """Exhaustive search for a strongly blocking (coalition, activity) pair.

    Exponential in the worst case.  Returns the lexicographically smallest
    coalition, ties broken by class order then copy index.
    """
    limit = _block_search_limit() if max_n is None else max_n
    if inst.n > limit:
        raise ValueError(f"exhaustive block search gated at n <= {limit} (n={inst.n})")
    order = inst.class_index
    best = None
    best_key = None
    for cert in _strong_blocks(inst, pi):
        key = (sorted(cert.coalition), order[cert.activity[0]], cert.activity[1])
        if best_key is None or key < best_key:
            best, best_key = cert, key
    return best


def has_strong_block(inst: Instance, pi: Assignment) -> bool:
    return next(_strong_blocks(inst, pi), None) is not None


def _prune_to_size(adj, comp: set[int], keep: frozenset[int], size: int) -> frozenset[int]:
    """Strip leaves outside ``keep`` from a subtree until it has ``size`` nodes."""
    comp = set(comp)
    while len(comp) > size:
        leaf = max(v for v in comp if v not in keep and len(adj[v] & comp) <= 1)
        comp.remove(leaf)
    return frozenset(comp)


def _components_within(adj, allowed: set[int]) -> list[set[int]]:
    comps = []
    left = set(allowed)
    while left:
        s = min(left)
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in left and w not in comp:
                    comp.add(w)
                    stack.append(w)
        left -= comp
        comps.append(comp)
    return comps


def check_core_forest(inst: Instance, pi: Assignment) -> BlockingCertificate | None:
    """Polynomial core check for forests.

    For every alternative (a, k) the players strictly preferring it to their
    current alternative induce a sub-forest; a block exists iff one of its
    components has at least k players and contains the current group of some
    copy of a (an unused copy imposes nothing).
    """
    if not is_forest(inst):
        raise ValueError("check_core_forest needs an acyclic communication graph")
    adj = inst.adjacency
    current = [inst.rank(i, pi.alternative(i)) for i in range(inst.n)]
    for a, j in _targets(inst, pi):
        base = pi.groups.get((a, j), frozenset())
        for k in range(max(len(base), 1), inst.n + 1):
            willing = {i for i in range(inst.n) if inst.rank(i, (a, k)) > current[i]}
            if not base <= willing or len(willing) < k:
                continue
            for comp in _components_within(adj, willing):
                if len(comp) >= k and base <= comp:
                    return BlockingCertificate(_prune_to_size(adj, comp, base, k), (a, j))
    return None


def analyze(inst: Instance, pi: Assignment, *, core: bool = True) -> StabilityReport:
    """Full report; the core part uses the forest check when the graph allows."""
    feasible = check_assignment_feasible(inst, pi)
    if not feasible:
        return StabilityReport(False)
    report = StabilityReport(True, check_individually_rational(inst, pi))
    report.ns_witness = find_ns_deviation(inst, pi)
    if core:
        if is_forest(inst):
            report.core_witness = check_core_forest(inst, pi)
        else:
            report.core_witness = find_strong_block(inst, pi)
    return report


def is_stable(inst: Instance, pi: Assignment, concept: Concept) -> bool:
    """Feasible, IR, and (for NASH/CORE) free of the matching deviation."""
    try:
        if not check_assignment_feasible(inst, pi):
            return False
    except InstanceError:
        return False
    if check_individually_rational(inst, pi):
        return False
    if concept is Concept.NASH:
        return find_ns_deviation(inst, pi) is None
    if concept is Concept.CORE:
        return not has_strong_block(inst, pi)
    return True


__all__ = [
    "BlockingCertificate",
    "Concept",
    "Deviation",
    "StabilityReport",
    "analyze",
    "check_assignment_feasible",
    "check_core_forest",
    "check_individually_rational",
    "find_ns_deviation",
    "find_strong_block",
    "has_strong_block",
    "is_stable",
    "verify_block",
    "verify_deviation",
]
