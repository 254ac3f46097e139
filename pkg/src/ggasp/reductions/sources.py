"""Source problems of the hardness constructions.

Three validated source types with exhaustive solvers, a JSON form and
random samplers:

* :class:`RainbowPath`: a properly edge-coloured path and a target ``k``
  (is there a rainbow matching with at least ``k`` edges?).
* :class:`Mmm`: a bipartite graph and ``k`` (is there a maximal matching with
  at most ``k`` edges?).
* :class:`Formula3B2`: a CNF formula in which every clause has three
  literals and every variable occurs twice positively and twice negatively.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Mapping

SOURCE_BOUND = 16


class SourceError(ValueError):
    """Invalid source instance."""


@dataclass(frozen=True)
class RainbowPath:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]
    k: int
    colors: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.colors is not None:
            object.__setattr__(self, "colors", tuple(self.colors))
        self._validate()

    def _validate(self) -> None:
        vs = self.vertices
        if not vs or len(set(vs)) != len(vs):
            raise SourceError("vertices must be a non-empty list of distinct names")
        if len(self.edges) != len(vs) - 1:
            raise SourceError("a path on m vertices has m-1 edges")
        deg = {v: 0 for v in vs}
        seen = set()
        for e in self.edges:
            if len(e) != 3:
                raise SourceError(f"edge {e!r} is not (u, v, color)")
            u, v, _ = e
            if u not in deg or v not in deg or u == v:
                raise SourceError(f"edge {e!r} has a bad endpoint")
            if frozenset((u, v)) in seen:
                raise SourceError(f"duplicate edge {e!r}")
            seen.add(frozenset((u, v)))
            deg[u] += 1
            deg[v] += 1
        if any(d > 2 for d in deg.values()):
            raise SourceError("graph is not a path: a vertex has degree above 2")
        # m-1 edges, max degree 2 and connected <=> path
        if len(vs) > 1 and len(self.order()[0]) != len(vs):
            raise SourceError("graph is not a path: it is disconnected")
        for e, f in combinations(self.edges, 2):
            if set(e[:2]) & set(f[:2]) and e[2] == f[2]:
                raise SourceError(f"coloring is not proper at edges {e!r} and {f!r}")
        used = {e[2] for e in self.edges}
        if self.colors is not None and set(self.colors) != used:
            raise SourceError("coloring is not surjective onto the declared colors")
        if not 0 <= self.k <= len(used):
            raise SourceError(f"k must lie in [0, q] with q={len(used)}")

    @property
    def color_list(self) -> list[str]:
        """Colors in first-use order along the path."""
        out: list[str] = []
        for _, _, c in self.order()[1]:
            if c not in out:
                out.append(c)
        return out

    @property
    def q(self) -> int:
        return len({e[2] for e in self.edges})

    def order(self) -> tuple[list[str], list[tuple[str, str, str]]]:
        """Vertices and edges along the path, starting from the endpoint
        listed first in ``vertices``."""
        if len(self.vertices) == 1:
            return [self.vertices[0]], []
        inc: dict[str, list[tuple[str, str, str]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e[0]].append(e)
            inc[e[1]].append(e)
        start = next((v for v in self.vertices if len(inc[v]) == 1), self.vertices[0])
        verts, edges = [start], []
        used: set[tuple] = set()
        while True:
            nxt = [e for e in inc[verts[-1]] if e not in used]
            if not nxt:
                break
            e = nxt[0]
            used.add(e)
            edges.append(e)
            verts.append(e[1] if e[0] == verts[-1] else e[0])
        return verts, edges


@dataclass(frozen=True)
class Mmm:
    U: tuple[str, ...]
    V: tuple[str, ...]
    E: tuple[tuple[str, str], ...]
    k: int

    def __post_init__(self) -> None:
        for f in ("U", "V"):
            object.__setattr__(self, f, tuple(getattr(self, f)))
        object.__setattr__(self, "E", tuple(tuple(e) for e in self.E))
        if len(set(self.U)) != len(self.U) or len(set(self.V)) != len(self.V):
            raise SourceError("duplicate vertex names")
        if set(self.U) & set(self.V):
            raise SourceError("U and V must be disjoint")
        for e in self.E:
            if len(e) != 2 or e[0] not in self.U or e[1] not in self.V:
                raise SourceError(f"edge {e!r} does not join U to V; graph is not bipartite as given")
        if len(set(self.E)) != len(self.E):
            raise SourceError("duplicate edges")
        if not 1 <= self.k <= len(self.E):
            raise SourceError(f"k must lie in [1, |E|] with |E|={len(self.E)}")


Literal = tuple[str, bool]


@dataclass(frozen=True)
class Formula3B2:
    variables: tuple[str, ...]
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(
            self, "clauses", tuple(tuple((str(v), bool(s)) for v, s in c) for c in self.clauses)
        )
        if not self.variables or len(set(self.variables)) != len(self.variables):
            raise SourceError("variables must be a non-empty list of distinct names")
        count = {(x, s): 0 for x in self.variables for s in (True, False)}
        for c in self.clauses:
            if len(c) != 3:
                raise SourceError(f"clause {c!r} does not have exactly 3 literals")
            for lit in c:
                if lit not in count:
                    raise SourceError(f"unknown variable in literal {lit!r}")
                count[lit] += 1
        bad = sorted({x for (x, _), cnt in count.items() if cnt != 2})
        if bad:
            raise SourceError(f"variables {bad} do not occur exactly twice positively and twice negatively")

    def occurrences(self) -> list[list[tuple[str, bool, int]]]:
        """Per clause, its literals tagged with occurrence number 1 or 2,
        numbered in clause order."""
        seen: dict[Literal, int] = {}
        out = []
        for c in self.clauses:
            row = []
            for x, s in c:
                seen[(x, s)] = seen.get((x, s), 0) + 1
                row.append((x, s, seen[(x, s)]))
            out.append(row)
        return out

    def satisfied_by(self, truth: Mapping[str, bool]) -> bool:
        return all(any(truth[x] == s for x, s in c) for c in self.clauses)


Source = RainbowPath | Mmm | Formula3B2


def _check_bound(size: int, what: str) -> None:
    if size > SOURCE_BOUND:
        raise SourceError(f"{what}={size} exceeds the exhaustive-search bound {SOURCE_BOUND}")


def _is_matching(edges) -> bool:
    ends = [v for e in edges for v in e[:2]]
    return len(ends) == len(set(ends))


def max_rainbow_matching(src: RainbowPath) -> tuple[tuple[str, str, str], ...]:
    """A largest rainbow matching (lexicographically first among them)."""
    _check_bound(len(src.edges), "edges")
    _, path = src.order()
    for r in range(len(path), -1, -1):
        for sub in combinations(path, r):
            if _is_matching(sub) and len({e[2] for e in sub}) == r:
                return sub
    return ()


def min_maximal_matching(src: Mmm) -> tuple[tuple[str, str], ...]:
    _check_bound(len(src.E), "edges")
    for r in range(len(src.E) + 1):
        for sub in combinations(src.E, r):
            if not _is_matching(sub):
                continue
            covered = {v for e in sub for v in e}
            if all(u in covered or v in covered for u, v in src.E):
                return sub
    raise AssertionError("the full edge set always contains a maximal matching")


def satisfying_assignment(src: Formula3B2) -> dict[str, bool] | None:
    _check_bound(len(src.variables), "variables")
    for bits in product([True, False], repeat=len(src.variables)):
        truth = dict(zip(src.variables, bits))
        if src.satisfied_by(truth):
            return truth
    return None


def solve_source(src: Source) -> int | bool:
    """Max rainbow matching size, min maximal matching size, or satisfiability."""
    if isinstance(src, RainbowPath):
        return len(max_rainbow_matching(src))
    if isinstance(src, Mmm):
        return len(min_maximal_matching(src))
    if isinstance(src, Formula3B2):
        return satisfying_assignment(src) is not None
    raise TypeError(f"not a source: {src!r}")


def is_yes(src: Source) -> bool:
    if isinstance(src, RainbowPath):
        return solve_source(src) >= src.k
    if isinstance(src, Mmm):
        return solve_source(src) <= src.k
    return bool(solve_source(src))


# -- JSON -------------------------------------------------------------------

def _lit_to_str(lit: Literal) -> str:
    x, s = lit
    return x if s else f"-{x}"


def _lit_from_str(text: str) -> Literal:
    return (text[1:], False) if text.startswith("-") else (text, True)


def source_to_dict(src: Source) -> dict[str, Any]:
    if isinstance(src, RainbowPath):
        out: dict[str, Any] = {
            "type": "rainbow_path",
            "vertices": list(src.vertices),
            "edges": [list(e) for e in src.edges],
            "k": src.k,
        }
        if src.colors is not None:
            out["colors"] = list(src.colors)
        return out
    if isinstance(src, Mmm):
        return {"type": "mmm", "U": list(src.U), "V": list(src.V), "E": [list(e) for e in src.E], "k": src.k}
    if isinstance(src, Formula3B2):
        return {
            "type": "sat3b2",
            "variables": list(src.variables),
            "clauses": [[_lit_to_str(l) for l in c] for c in src.clauses],
        }
    raise TypeError(f"not a source: {src!r}")


def source_from_dict(raw: Mapping) -> Source:
    try:
        kind = raw["type"]
        if kind == "rainbow_path":
            return RainbowPath(raw["vertices"], raw["edges"], raw["k"], raw.get("colors"))
        if kind == "mmm":
            return Mmm(raw["U"], raw["V"], raw["E"], raw["k"])
        if kind == "sat3b2":
            return Formula3B2(
                raw["variables"], [[_lit_from_str(t) for t in c] for c in raw["clauses"]]
            )
    except (KeyError, TypeError, AttributeError) as exc:
        raise SourceError(f"malformed source description: {exc!r}") from exc
    raise SourceError(f"unknown source type {raw.get('type')!r}")


# -- sampling ---------------------------------------------------------------

def random_rainbow_path(rng: random.Random, n_edges: int, q: int | None = None) -> RainbowPath:
    """A path with ``n_edges`` edges, properly coloured with colors c0..c(q-1),
    every color used, and a random ``k``."""
    if n_edges == 0:
        return RainbowPath(["v0"], [], 0)
    q = rng.randint(min(2, n_edges), n_edges) if q is None else q
    if not (min(2, n_edges) <= q <= n_edges):
        raise SourceError("need 2 <= q <= edges (or q = 1 for a single edge)")
    while True:
        cols = [rng.randrange(q)]
        for _ in range(n_edges - 1):
            cols.append(rng.choice([c for c in range(q) if c != cols[-1]]))
        if len(set(cols)) == q:
            break
    verts = [f"v{i}" for i in range(n_edges + 1)]
    edges = [(verts[i], verts[i + 1], f"c{cols[i]}") for i in range(n_edges)]
    return RainbowPath(verts, edges, rng.randint(0, q))


def random_mmm(rng: random.Random, n_u: int, n_v: int, density: float = 0.5) -> Mmm:
    U = [f"u{i}" for i in range(n_u)]
    V = [f"w{i}" for i in range(n_v)]
    E = [(u, v) for u in U for v in V if rng.random() < density]
    if not E:
        E = [(rng.choice(U), rng.choice(V))]
    return Mmm(U, V, E, rng.randint(1, len(E)))


def random_formula_3b2(rng: random.Random, n_vars: int) -> Formula3B2:
    """Random (3,B2) formula; ``n_vars`` must be a multiple of 3."""
    if n_vars % 3 or n_vars < 3:
        raise SourceError("(3,B2) formulas need a positive multiple of 3 variables")
    names = [chr(ord("x") + i) if n_vars <= 3 else f"x{i}" for i in range(n_vars)]
    lits = [(x, s) for x in names for s in (True, True, False, False)]
    rng.shuffle(lits)
    clauses = [lits[i : i + 3] for i in range(0, len(lits), 3)]
    return Formula3B2(names, clauses)
