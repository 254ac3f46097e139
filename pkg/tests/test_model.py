import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ggasp.model import (
    VOID_ALT,
    Alternative,
    Assignment,
    Comparison,
    InstanceError,
    TopologyTag,
    build_instance,
    classify_topology,
    connected_components,
    is_feasible_coalition,
    make_instance,
    path_order,
    prefers,
    rank_order,
    star_center,
)
from ggasp.sampling import random_instance

from strategies import instances


def raw(n, edges, acts=(("a", 1),), prefs=None):
    return {
        "players": n,
        "edges": [list(e) for e in edges],
        "activities": [{"id": a, "copies": c} for a, c in acts],
        "prefs": prefs if prefs is not None else [[] for _ in range(n)],
    }


def test_build_empty_core(empty_core):
    assert empty_core.n == 3
    assert empty_core.class_ids == ("a", "b")
    assert empty_core.edges == {(0, 1), (1, 2)}


def test_build_trivial():
    inst = build_instance({"players": 1, "edges": [], "activities": [], "prefs": [[]]})
    assert inst.n == 1 and inst.p == 0


@pytest.mark.parametrize(
    "bad",
    [
        raw(2, [(1, 1)]),
        raw(2, [(0, 2)]),
        raw(2, [(0, 1)], acts=(("a", 1), ("a", 2))),
        raw(2, [(0, 1)], acts=(("a", 0),)),
        raw(2, [(0, 1)], prefs=[[{"activity": "a", "size": 3, "rank": 1}], []]),
        raw(2, [(0, 1)], prefs=[[{"activity": "z", "size": 1, "rank": 1}], []]),
        raw(0, []),
        raw(2, [(0, 1)], prefs=[[]]),
        {"players": 2, "activities": [{"copies": 1}], "edges": []},
    ],
)
def test_build_rejects(bad):
    with pytest.raises(InstanceError):
        build_instance(bad)


def test_missing_prefs_default_to_empty():
    inst = build_instance({"players": 2, "edges": [[0, 1]], "activities": [{"id": "a"}]})
    assert inst.rank(0, ("a", 1)) == -1
    assert inst.copies("a") == 1


def test_rank_defaults(empty_core):
    assert empty_core.rank(0, VOID_ALT) == 0
    assert empty_core.rank(0, ("a", 2)) == -1
    assert empty_core.approves(0, ("b", 2))
    assert not empty_core.approves(0, ("a", 1))


def test_prefers_examples(empty_core):
    assert prefers(empty_core, 1, ("a", 2), ("b", 2)) is Comparison.STRICT
    assert prefers(empty_core, 0, VOID_ALT, VOID_ALT) is Comparison.INDIFFERENT
    assert prefers(empty_core, 0, ("a", 2), VOID_ALT) is Comparison.WORSE


def test_rank_order_ties():
    ranks = rank_order([("u", 1), ("w", 1)], ("a", 3))
    assert ranks[Alternative("u", 1)] == ranks[Alternative("w", 1)] == 2
    assert ranks[Alternative("a", 3)] == 1


@given(instances(max_n=3, max_p=2))
def test_prefers_is_a_weak_order(inst):
    alts = [VOID_ALT] + [Alternative(a, k) for a in inst.class_ids for k in range(1, inst.n + 1)]
    for i in range(inst.n):
        for x in alts:
            assert prefers(inst, i, x, x) is Comparison.INDIFFERENT
        for x, y, z in itertools.product(alts, repeat=3):
            xy, yz = prefers(inst, i, x, y), prefers(inst, i, y, z)
            if xy is Comparison.STRICT and yz is not Comparison.WORSE:
                assert prefers(inst, i, x, z) is Comparison.STRICT


def test_feasible_coalition_examples(empty_core):
    assert is_feasible_coalition(empty_core, {0, 1})
    assert not is_feasible_coalition(empty_core, {0, 2})
    assert is_feasible_coalition(empty_core, {1, 2})
    with pytest.raises(ValueError):
        is_feasible_coalition(empty_core, set())


@given(st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_feasibility_monotone_under_edges(n, seed):
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = [e for e in pairs if rng.random() < 0.3]
    extra = edges + [e for e in pairs if e not in edges and rng.random() < 0.5]
    small = random_instance(rng, n, 1, edges)
    big = make_instance(n, small.activities, extra, small.prefs)
    for r in range(1, n + 1):
        for s in itertools.combinations(range(n), r):
            if is_feasible_coalition(small, s):
                assert is_feasible_coalition(big, s)


def _bare(n, edges):
    return make_instance(n, [("a", 1)], edges, [{} for _ in range(n)])


@pytest.mark.parametrize(
    "n, edges, tag, c, k",
    [
        (3, [(0, 1), (1, 2)], TopologyTag.PATH, 3, 1),
        (4, [(0, 1), (0, 2), (0, 3)], TopologyTag.STAR, 4, 1),
        (4, [(0, 1), (2, 3)], TopologyTag.SMALL_COMPONENTS, 2, 2),
        (2, [(0, 1)], TopologyTag.PATH, 2, 1),
        (1, [], TopologyTag.PATH, 1, 1),
        (6, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)], TopologyTag.FOREST, 6, 1),
        (3, [(0, 1), (1, 2), (0, 2)], TopologyTag.GENERAL, 3, 1),
    ],
)
def test_classify_topology(n, edges, tag, c, k):
    topo = classify_topology(_bare(n, edges))
    assert topo.tag is tag
    assert (topo.c, topo.k) == (c, k)


@given(st.integers(1, 12))
def test_path_topology_counts(n):
    topo = classify_topology(_bare(n, [(i, i + 1) for i in range(n - 1)]))
    assert topo.tag is TopologyTag.PATH and topo.c == n and topo.k == 1


def test_path_order_and_center():
    inst = _bare(4, [(2, 0), (0, 3), (3, 1)])
    assert path_order(inst) == [1, 3, 0, 2]
    assert star_center(_bare(4, [(1, 0), (1, 2), (1, 3)])) == 1
    assert star_center(_bare(4, [(0, 1), (2, 3)])) is None
    assert connected_components(_bare(4, [(0, 1), (2, 3)])) == [(0, 1), (2, 3)]


def test_assignment_groups_and_canonical():
    pi = Assignment.of(("a", 1), ("a", 1), None, ("a", 0))
    assert pi.groups == {("a", 1): {0, 1}, ("a", 0): {3}}
    assert pi.alternative(0) == ("a", 2)
    assert pi.alternative(2) == VOID_ALT
    assert pi.canonical() == Assignment.of(("a", 0), ("a", 0), None, ("a", 1))
    assert pi.group_of(2) == {2}
