"""Instances, preferences, assignments and graph topology.

Players are 0-based integers.  Activity classes are string ids; a class with
``copies`` interchangeable copies stands for that many equivalent activities.
Preferences are integer ranks over alternatives ``(activity, size)``; the void
alternative ``(None, 1)`` always has rank 0 and every unlisted non-void
alternative has rank -1.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

VOID = None
UNLISTED_RANK = -1
VOID_RANK = 0


class Alternative(NamedTuple):
    activity: str | None
    size: int

    @property
    def is_void(self) -> bool:
        return self.activity is None


VOID_ALT = Alternative(None, 1)


class InstanceError(ValueError):
    """Raised when an instance or assignment description is malformed."""


class Comparison(enum.Enum):
    STRICT = 1
    INDIFFERENT = 0
    WORSE = -1


@dataclass(frozen=True)
class Instance:
    n: int
    activities: tuple[tuple[str, int], ...]
    edges: frozenset[tuple[int, int]]
    prefs: tuple[dict[Alternative, int], ...]
    names: tuple[str, ...] | None = None

    @cached_property
    def class_ids(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.activities)

    @cached_property
    def _copies(self) -> dict[str, int]:
        return dict(self.activities)

    @cached_property
    def class_index(self) -> dict[str, int]:
        return {a: idx for idx, a in enumerate(self.class_ids)}

    @property
    def p(self) -> int:
        return len(self.activities)

    def copies(self, a: str) -> int:
        return self._copies[a]

    def is_copyable(self, a: str) -> bool:
        return self._copies[a] >= self.n

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return tuple(frozenset(s) for s in adj)

    def rank(self, i: int, alt: Alternative | tuple) -> int:
        if alt[0] is None:
            return VOID_RANK
        return self.prefs[i].get(Alternative(*alt), UNLISTED_RANK)

    def approves(self, i: int, alt: Alternative | tuple) -> bool:
        return self.rank(i, alt) > VOID_RANK

    def label(self, i: int) -> str:
        return self.names[i] if self.names else str(i)


def rank_order(*tiers) -> dict[Alternative, int]:
    """Rank map from preference tiers listed best first, all above void.

    Each tier is an ``(activity, size)`` pair or a list of pairs that the
    player is indifferent between.

    >>> rank_order(("b", 2), ("a", 3))
    {Alternative(activity='b', size=2): 2, Alternative(activity='a', size=3): 1}
    """
    ranks: dict[Alternative, int] = {}
    top = len(tiers)
    for pos, tier in enumerate(tiers):
        members = [tier] if isinstance(tier, tuple) else list(tier)
        for alt in members:
            ranks[Alternative(*alt)] = top - pos
    return ranks


def make_instance(
    n: int,
    activities: Mapping[str, int] | Iterable,
    edges: Iterable[Sequence[int]],
    prefs: Sequence[Mapping],
    names: Sequence[str] | None = None,
) -> Instance:
    """Validated constructor.

    ``activities`` is a mapping id -> copies, or a sequence whose items are
    ids (one copy) or ``(id, copies)`` pairs.
    """
    if not isinstance(n, int) or n < 1:
        raise InstanceError(f"player count must be a positive integer, got {n!r}")

    if isinstance(activities, Mapping):
        acts = list(activities.items())
    else:
        acts = [(item, 1) if isinstance(item, str) else tuple(item) for item in activities]
    seen: set[str] = set()
    for a, copies in acts:
        if not isinstance(a, str) or not a:
            raise InstanceError(f"activity id must be a non-empty string, got {a!r}")
        if a in seen:
            raise InstanceError(f"duplicate activity class id {a!r}")
        seen.add(a)
        if not isinstance(copies, int) or copies < 1:
            raise InstanceError(f"activity {a!r} needs copies >= 1, got {copies!r}")

    edge_set: set[tuple[int, int]] = set()
    for e in edges:
        if len(e) != 2:
            raise InstanceError(f"edge must have two endpoints: {e!r}")
        i, j = e
        for v in (i, j):
            if not isinstance(v, int) or not 0 <= v < n:
                raise InstanceError(f"edge endpoint {v!r} out of range for n={n}")
        if i == j:
            raise InstanceError(f"self-loop on player {i}")
        edge_set.add((min(i, j), max(i, j)))

    if len(prefs) != n:
        raise InstanceError(f"expected {n} preference tables, got {len(prefs)}")
    tables = []
    for i, table in enumerate(prefs):
        clean: dict[Alternative, int] = {}
        for alt, r in table.items():
            a, k = alt
            if a is None:
                raise InstanceError(f"player {i}: the void alternative has a fixed rank")
            if a not in seen:
                raise InstanceError(f"player {i}: unknown activity {a!r}")
            if not isinstance(k, int) or not 1 <= k <= n:
                raise InstanceError(f"player {i}: size {k!r} outside [1, {n}]")
            if not isinstance(r, int):
                raise InstanceError(f"player {i}: rank must be an integer, got {r!r}")
            clean[Alternative(a, k)] = r
        tables.append(clean)

    if names is not None:
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise InstanceError("names must list one label per player")

    return Instance(n, tuple(acts), frozenset(edge_set), tuple(tables), names)


def build_instance(raw: Mapping) -> Instance:
    """Build an instance from its JSON form (see ``ggasp.io``)."""
    try:
        n = raw["players"]
        acts = [(d["id"], d.get("copies", 1)) for d in raw.get("activities", [])]
        edges = [tuple(e) for e in raw.get("edges", [])]
        raw_prefs = raw.get("prefs")
        if raw_prefs is None:
            raw_prefs = [[] for _ in range(n if isinstance(n, int) else 0)]
        prefs = [{(d["activity"], d["size"]): d["rank"] for d in entries} for entries in raw_prefs]
    except (KeyError, TypeError, AttributeError) as exc:
        raise InstanceError(f"malformed instance description: {exc!r}") from exc
    return make_instance(n, acts, edges, prefs, raw.get("names"))


def prefers(inst: Instance, i: int, x: Alternative | tuple, y: Alternative | tuple) -> Comparison:
    """Compare two alternatives from player ``i``'s point of view."""
    rx, ry = inst.rank(i, x), inst.rank(i, y)
    if rx > ry:
        return Comparison.STRICT
    if rx == ry:
        return Comparison.INDIFFERENT
    return Comparison.WORSE


def is_connected_set(inst: Instance, members: Iterable[int]) -> bool:
    members = set(members)
    if not members:
        return False
    start = next(iter(members))
    seen = {start}
    queue = [start]
    adj = inst.adjacency
    while queue:
        v = queue.pop()
        for w in adj[v]:
            if w in members and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(members)


def is_feasible_coalition(inst: Instance, s: Iterable[int]) -> bool:
    s = set(s)
    if not s:
        raise ValueError("a coalition must be non-empty")
    if any(not 0 <= i < inst.n for i in s):
        raise ValueError(f"coalition {sorted(s)} has players outside [0, {inst.n})")
    return is_connected_set(inst, s)


# ---------------------------------------------------------------------------
# assignments


@dataclass(frozen=True)
class Assignment:
    """Per-player slot: ``None`` (void) or ``(class id, copy index)``."""

    slots: tuple[tuple[str, int] | None, ...]

    @classmethod
    def of(cls, *entries) -> Assignment:
        """``Assignment.of("b", "b", None)``; bare ids mean copy 0."""
        slots = []
        for e in entries:
            if e is None:
                slots.append(None)
            elif isinstance(e, str):
                slots.append((e, 0))
            else:
                slots.append((e[0], int(e[1])))
        return cls(tuple(slots))

    @classmethod
    def void(cls, n: int) -> Assignment:
        return cls((None,) * n)

    def __len__(self) -> int:
        return len(self.slots)

    def __getitem__(self, i: int):
        return self.slots[i]

    @cached_property
    def groups(self) -> dict[tuple[str, int], frozenset[int]]:
        out: dict[tuple[str, int], set[int]] = {}
        for i, s in enumerate(self.slots):
            if s is not None:
                out.setdefault(s, set()).add(i)
        return {k: frozenset(v) for k, v in out.items()}

    def group_of(self, i: int) -> frozenset[int]:
        s = self.slots[i]
        return frozenset((i,)) if s is None else self.groups[s]

    def alternative(self, i: int) -> Alternative:
        s = self.slots[i]
        if s is None:
            return VOID_ALT
        return Alternative(s[0], len(self.groups[s]))

    def used_copies(self, a: str) -> set[int]:
        return {j for (b, j) in self.groups if b == a}

    def canonical(self) -> Assignment:
        """Relabel copies of each class in order of first use by player id."""
        relabel: dict[tuple[str, int], int] = {}
        counters: dict[str, int] = {}
        slots = []
        for s in self.slots:
            if s is None:
                slots.append(None)
                continue
            if s not in relabel:
                relabel[s] = counters.get(s[0], 0)
                counters[s[0]] = relabel[s] + 1
            slots.append((s[0], relabel[s]))
        return Assignment(tuple(slots))

    def classes_used(self) -> set[str]:
        return {a for (a, _) in self.groups}


def validate_assignment(inst: Instance, pi: Assignment) -> None:
    if len(pi) != inst.n:
        raise InstanceError(f"assignment covers {len(pi)} players, instance has {inst.n}")
    for i, s in enumerate(pi.slots):
        if s is None:
            continue
        a, j = s
        if a not in inst.class_index:
            raise InstanceError(f"player {i}: unknown activity {a!r}")
        if not 0 <= j < inst.copies(a):
            raise InstanceError(f"player {i}: copy index {j} out of range for {a!r}")


# ---------------------------------------------------------------------------
# topology


class TopologyTag(enum.Enum):
    PATH = "path"
    STAR = "star"
    FOREST = "forest"
    SMALL_COMPONENTS = "small_components"
    GENERAL = "general"


@dataclass(frozen=True)
class Topology:
    tag: TopologyTag
    components: tuple[tuple[int, ...], ...]

    @property
    def c(self) -> int:
        return max(len(comp) for comp in self.components)

    @property
    def k(self) -> int:
        return len(self.components)


def connected_components(inst: Instance) -> list[tuple[int, ...]]:
    seen = [False] * inst.n
    comps = []
    for s in range(inst.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in sorted(inst.adjacency[v]):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def is_forest(inst: Instance) -> bool:
    return len(inst.edges) == inst.n - len(connected_components(inst))


def path_order(inst: Instance) -> list[int] | None:
    """Players in path order if the graph is a single path, else None."""
    if len(connected_components(inst)) != 1 or len(inst.edges) != inst.n - 1:
        return None
    adj = inst.adjacency
    if any(len(nb) > 2 for nb in adj):
        return None
    if inst.n == 1:
        return [0]
    start = min(v for v in range(inst.n) if len(adj[v]) == 1)
    order = [start]
    prev = None
    while len(order) < inst.n:
        v = order[-1]
        nxt = next(w for w in adj[v] if w != prev)
        prev = v
        order.append(nxt)
    return order


def star_center(inst: Instance) -> int | None:
    """Center of a star (a tree with a vertex adjacent to all others)."""
    if len(inst.edges) != inst.n - 1 or len(connected_components(inst)) != 1:
        return None
    for v in range(inst.n):
        if len(inst.adjacency[v]) == inst.n - 1:
            return v
    return None


def classify_topology(inst: Instance) -> Topology:
    comps = tuple(connected_components(inst))
    if len(comps) > 1:
        return Topology(TopologyTag.SMALL_COMPONENTS, comps)
    if path_order(inst) is not None:
        tag = TopologyTag.PATH
    elif star_center(inst) is not None:
        tag = TopologyTag.STAR
    elif is_forest(inst):
        tag = TopologyTag.FOREST
    else:
        tag = TopologyTag.GENERAL
    return Topology(tag, comps)
