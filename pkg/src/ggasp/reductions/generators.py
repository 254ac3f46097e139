"""Instances built by the hardness constructions, plus the two fixtures.

Every generator works for both stability notions: the Nash variant uses
stalker pairs as gadgets, the core variant the three-player cycle with an
empty core.  Approval preferences (all approved alternatives tied) are
encoded with rank 1.
"""
from __future__ import annotations

import enum

from ..model import Instance, make_instance, rank_order
from ..stability import Concept
from .sources import Formula3B2, Mmm, RainbowPath


class Fixture(enum.Enum):
    EMPTY_CORE = "empty_core"
    STALKER = "stalker"


def fixture(name: Fixture | str, copies: int | None = None) -> Instance:
    """The three-player path with an empty core, or the two-player stalker
    game.  ``copies`` overrides the number of copies of every class."""
    name = Fixture(name.lower()) if isinstance(name, str) else name
    if name is Fixture.EMPTY_CORE:
        prefs = [
            rank_order(("b", 2), ("a", 3)),
            rank_order(("a", 2), ("b", 2), ("a", 3)),
            rank_order(("a", 3), ("b", 1), ("a", 2)),
        ]
        c = copies or 1
        return make_instance(3, [("a", c), ("b", c)], [(0, 1), (1, 2)], prefs, ["1", "2", "3"])
    if name is Fixture.STALKER:
        prefs = [rank_order(("a", 1)), rank_order(("a", 2))]
        return make_instance(2, [("a", copies or 1)], [(0, 1)], prefs, ["1", "2"])
    raise ValueError(f"unknown fixture {name!r}")


class _Builder:
    """Collects named players, path/star edges and preference tables."""

    def __init__(self) -> None:
        self.names: list[str] = []
        self.prefs: list[dict] = []
        self.edges: list[tuple[int, int]] = []
        self.classes: list[str] = []

    def player(self, name: str, prefs: dict) -> int:
        self.names.append(name)
        self.prefs.append(prefs)
        return len(self.names) - 1

    def link(self, i: int, j: int) -> None:
        self.edges.append((i, j))

    def build(self) -> Instance:
        return make_instance(len(self.names), self.classes, self.edges, self.prefs, self.names)


def _approve(*alts) -> dict:
    return {alt: 1 for alt in alts}


def _concept(concept: Concept | str) -> Concept:
    concept = Concept(concept) if isinstance(concept, str) else concept
    if concept not in (Concept.NASH, Concept.CORE):
        raise ValueError("reductions exist for nash and core only")
    return concept


def color_class(c: str) -> str:
    return f"color:{c}"


def aux_class(c: str) -> str:
    return f"aux:{c}"


def generate_from_rainbow(src: RainbowPath, concept: Concept | str) -> Instance:
    """A path: vertex and edge players in path order, then q-k garbage
    collectors, then one gadget per color."""
    concept = _concept(concept)
    verts, edges = src.order()
    colors = src.color_list
    q = len(colors)
    b = _Builder()
    b.classes = [color_class(c) for c in colors]
    if concept is Concept.CORE:
        b.classes += [aux_class(c) for c in colors]

    chain: list[int] = []
    for idx, v in enumerate(verts):
        touching = edges[max(0, idx - 1) : idx + 1]
        chain.append(b.player(f"v:{v}", _approve(*[(color_class(e[2]), 3) for e in touching])))
        if idx < len(edges):
            e = edges[idx]
            chain.append(b.player(f"e:{e[0]}-{e[1]}", _approve((color_class(e[2]), 3))))
    for g in range(q - src.k):
        chain.append(b.player(f"g{g + 1}", _approve(*[(color_class(c), 1) for c in colors])))
    for c in colors:
        cc, ac = color_class(c), aux_class(c)
        if concept is Concept.NASH:
            chain.append(b.player(f"{c}.1", _approve((cc, 1))))
            chain.append(b.player(f"{c}.2", _approve((cc, 2))))
        else:
            chain.append(b.player(f"{c}.1", rank_order((cc, 2), (ac, 3))))
            chain.append(b.player(f"{c}.2", rank_order((ac, 2), (cc, 2), (ac, 3))))
            chain.append(b.player(f"{c}.3", rank_order((ac, 3), (cc, 1), (ac, 2))))
    for i, j in zip(chain, chain[1:]):
        b.link(i, j)
    return b.build()


def mmm_group_size(src: Mmm) -> int:
    """Size of the center's group; ``k`` above |V| is read as |V|."""
    return len(src.V) - min(src.k, len(src.V)) + 1


def generate_from_mmm(src: Mmm, concept: Concept | str) -> Instance:
    """A star: center first, then one leaf per vertex of V, then the gadget leaves."""
    concept = _concept(concept)
    big = mmm_group_size(src)
    nbrs = {v: [u for u, w in src.E if w == v] for v in src.V}
    b = _Builder()
    b.classes = [f"u:{u}" for u in src.U]
    if concept is Concept.NASH:
        b.classes += ["a", "b"]
        center = b.player("c", rank_order(("a", big), ("b", 1)))
    else:
        b.classes += ["a", "x", "y"]
        center = b.player("c", rank_order(("a", big), ("x", 2), ("y", 2), ("x", 3)))
    for v in src.V:
        tiers = [[(f"u:{u}", 1) for u in nbrs[v]]] if nbrs[v] else []
        leaf = b.player(f"v:{v}", rank_order(*tiers, ("a", big)))
        b.link(center, leaf)
    if concept is Concept.NASH:
        b.link(center, b.player("s", _approve(("b", 2))))
    else:
        b.link(center, b.player("s1", rank_order(("y", 2), ("x", 3))))
        b.link(center, b.player("s2", rank_order(("x", 3), ("y", 1), ("x", 2))))
    return b.build()


def lit_class(x: str, positive: bool, occ: int) -> str:
    return f"lit:{x}{occ}" if positive else f"lit:~{x}{occ}"


def clause_class(idx: int) -> str:
    return f"clause:{idx}"


def generate_from_3sat(src: Formula3B2, concept: Concept | str) -> Instance:
    concept = _concept(concept)
    if concept is Concept.NASH:
        return _sat_nash(src)
    return _sat_core(src)


def _sat_nash(src: Formula3B2) -> Instance:
    b = _Builder()
    for x in src.variables:
        b.classes += [f"var:{x}", lit_class(x, True, 1), lit_class(x, True, 2),
                      lit_class(x, False, 1), lit_class(x, False, 2), f"a:{x}", f"a:~{x}"]
    b.classes += [clause_class(i) for i in range(len(src.clauses))]
    for x in src.variables:
        var = f"var:{x}"
        for positive, aux, tag in ((True, f"a:{x}", x), (False, f"a:~{x}", f"~{x}")):
            l1, l2 = lit_class(x, positive, 1), lit_class(x, positive, 2)
            p1 = b.player(f"{tag}1", rank_order((var, 2), (var, 1), (l1, 1), (l2, 2), (aux, 1)))
            p2 = b.player(f"{tag}2", rank_order((var, 2), (l2, 1), (l1, 2), (aux, 2)))
            b.link(p1, p2)
    for idx, row in enumerate(src.occurrences()):
        cc = clause_class(idx)
        lits = [lit_class(*occ) for occ in row]
        s = b.player(f"s{idx}", rank_order([(l, 2) for l in lits] + [(cc, 2)]))
        for r, l in enumerate(lits):
            b.link(s, b.player(f"c{idx}.{r + 1}", rank_order((l, 1), (cc, 2))))
    return b.build()


def _sat_core(src: Formula3B2) -> Instance:
    b = _Builder()
    for x in src.variables:
        b.classes += [f"var:{x}", lit_class(x, True, 1), lit_class(x, True, 2),
                      lit_class(x, False, 1), lit_class(x, False, 2),
                      f"a:{x}", f"b:{x}", f"a:~{x}", f"b:~{x}"]
    for x in src.variables:
        var = f"var:{x}"
        ax, bx, nax, nbx = f"a:{x}", f"b:{x}", f"a:~{x}", f"b:~{x}"
        p1, p2 = lit_class(x, True, 1), lit_class(x, True, 2)
        n1, n2 = lit_class(x, False, 1), lit_class(x, False, 2)
        hub = b.player(x, rank_order((var, 3), (ax, 3), (bx, 1), (ax, 2)))
        b.link(hub, b.player(f"{x}1", rank_order([(var, 3), (p1, 1)], (bx, 2), (ax, 3))))
        b.link(hub, b.player(f"{x}2", rank_order([(var, 3), (p2, 1)], (ax, 2), (bx, 2), (ax, 3))))
        hub = b.player(f"~{x}", rank_order((var, 3), (nax, 3), (nbx, 1), (nax, 2)))
        # the first negative player ranks (a~x, 2) where its positive twin
        # ranks (ax, 3); kept as constructed
        b.link(hub, b.player(f"~{x}1", rank_order([(var, 3), (n1, 1)], (nbx, 2), (nax, 2))))
        b.link(hub, b.player(f"~{x}2", rank_order([(var, 3), (n2, 1)], (nax, 2), (nbx, 2), (nax, 3))))
    for idx, row in enumerate(src.occurrences()):
        l1, l2, l3 = (lit_class(*occ) for occ in row)
        c1 = b.player(f"c{idx}.1", rank_order((l1, 2)))
        c2 = b.player(f"c{idx}.2", rank_order((l2, 2), (l1, 2), (l3, 2)))
        c3 = b.player(f"c{idx}.3", rank_order((l3, 2), (l1, 1), (l2, 2)))
        b.link(c2, c1)
        b.link(c2, c3)
    return b.build()


def generate(src, concept: Concept | str) -> Instance:
    if isinstance(src, RainbowPath):
        return generate_from_rainbow(src, concept)
    if isinstance(src, Mmm):
        return generate_from_mmm(src, concept)
    if isinstance(src, Formula3B2):
        return generate_from_3sat(src, concept)
    raise TypeError(f"not a source: {src!r}")
