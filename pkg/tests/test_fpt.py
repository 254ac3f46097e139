from itertools import combinations

import numpy as np
import pytest
from hypothesis import given

from ggasp.fpt import (
    DERANDOMIZED,
    RANDOMIZED,
    perfect_hash_family,
    solve_core_components,
    solve_ns_components,
    solve_ns_path,
    solve_ns_star,
)
from ggasp.fpt.hashing import is_perfect
from ggasp.fpt.star import default_trials
from ggasp.model import Assignment, make_instance, rank_order
from ggasp.oracle import Status, oracle_find_stable
from ggasp.reductions import Mmm, fixture, generate
from ggasp.stability import Concept, check_individually_rational, find_ns_deviation, find_strong_block

from strategies import instances


def nash_ok(inst, pi):
    return check_individually_rational(inst, pi) == [] and find_ns_deviation(inst, pi) is None


# path


def test_path_examples(empty_core, stalker):
    res = solve_ns_path(empty_core)
    assert res.found and nash_ok(empty_core, res.assignment)
    assert solve_ns_path(stalker).status is Status.NONE_EXISTS
    one = make_instance(1, [("a", 1), ("b", 1)], [], [rank_order(("b", 1), ("a", 1))])
    assert solve_ns_path(one).assignment == Assignment.of("b")


def test_path_rejects():
    star = make_instance(4, [("a", 1)], [(0, 1), (0, 2), (0, 3)], [{}] * 4)
    with pytest.raises(ValueError):
        solve_ns_path(star)
    with pytest.raises(ValueError):
        solve_ns_path(fixture("stalker", copies=2))


@given(instances(shape="path", max_n=8, max_p=3))
def test_path_matches_oracle(inst):
    res = solve_ns_path(inst)
    assert res.found == oracle_find_stable(inst, Concept.NASH).found
    if res.found:
        assert nash_ok(inst, res.assignment)


# star


def test_star_examples(stalker):
    inst = generate(Mmm(["u1"], ["v1"], [("u1", "v1")], 1), Concept.NASH)
    for mode in (DERANDOMIZED, RANDOMIZED):
        res = solve_ns_star(inst, mode)
        assert res.found and nash_ok(inst, res.assignment)
        assert solve_ns_star(stalker, mode).status is Status.NONE_EXISTS
    lone = make_instance(1, [("a", 1)], [], [rank_order(("a", 1))])
    assert solve_ns_star(lone).assignment == Assignment.of("a")


def test_star_rejects(empty_core):
    four_path = make_instance(4, [("a", 1)], [(0, 1), (1, 2), (2, 3)], [{}] * 4)
    with pytest.raises(ValueError):
        solve_ns_star(four_path)
    with pytest.raises(ValueError):
        solve_ns_star(empty_core, "sometimes")


def test_default_trials():
    # one color: every coloring is colorful
    assert default_trials(1) == 1
    assert default_trials(2) == 19
    assert default_trials(3, delta=0.5) == 19


@given(instances(shape="star", max_n=8, max_p=3))
def test_star_matches_oracle(inst):
    truth = oracle_find_stable(inst, Concept.NASH).found
    res = solve_ns_star(inst, DERANDOMIZED)
    assert res.found == truth
    if res.found:
        assert nash_ok(inst, res.assignment)
    rnd = solve_ns_star(inst, RANDOMIZED, seed=7)
    assert not rnd.found or (truth and nash_ok(inst, rnd.assignment))


# components


def _two_stalkers():
    prefs = [rank_order(("a", 1)), rank_order(("a", 2))] * 2
    return make_instance(4, [("a", 1)], [(0, 1), (2, 3)], prefs)


def test_components_nash_examples(empty_core):
    assert solve_ns_components(_two_stalkers()).status is Status.NONE_EXISTS
    res = solve_ns_components(empty_core)
    assert res.found and nash_ok(empty_core, res.assignment)
    prefs = [rank_order(("a", 2)), rank_order(("a", 2)), rank_order(("b", 1)), {}]
    inst = make_instance(4, [("a", 1), ("b", 1)], [(0, 1), (2, 3)], prefs)
    res = solve_ns_components(inst)
    assert res.found and nash_ok(inst, res.assignment)
    assert res.assignment[2] == ("b", 0)


def test_components_core_examples(empty_core):
    assert solve_core_components(empty_core).status is Status.NONE_EXISTS
    base = list(empty_core.prefs)
    renamed = [{(("c" if a == "a" else "d"), k): r for (a, k), r in p.items()} for p in base]
    double = make_instance(6, [("a", 1), ("b", 1), ("c", 1), ("d", 1)],
                           [(0, 1), (1, 2), (3, 4), (4, 5)], base + renamed)
    assert solve_core_components(double).status is Status.NONE_EXISTS
    one = make_instance(1, [("a", 1)], [], [{}])
    assert solve_core_components(one).found


def test_components_bound(empty_core):
    with pytest.raises(ValueError):
        solve_ns_components(empty_core, max_component=2)


@given(instances(shape="components", max_n=8, max_p=3))
def test_components_match_oracle(inst):
    for concept, solver in ((Concept.NASH, solve_ns_components), (Concept.CORE, solve_core_components)):
        res = solver(inst)
        assert res.found == oracle_find_stable(inst, concept).found
        if res.found and concept is Concept.CORE:
            assert find_strong_block(inst, res.assignment) is None


@given(instances(shape="components", max_n=8, max_p=3))
def test_split_core_matches_oracle(inst):
    res = solve_core_components(inst, split=True, max_component=inst.n)
    assert res.found == oracle_find_stable(inst, Concept.CORE).found


# hash families


@pytest.mark.parametrize("domain, m", [(1, 1), (4, 2), (7, 3), (9, 4), (12, 5), (6, 6)])
def test_small_families_are_perfect(domain, m):
    assert is_perfect(perfect_hash_family(domain, m), domain, m)


def _perfect_np(family, domain, m):
    left = np.array(list(combinations(range(domain), m)), dtype=np.int64)
    full = (1 << m) - 1
    for f in family:
        f = np.asarray(f)
        hit = np.bitwise_or.reduce(np.left_shift(1, f[left]), axis=1) == full
        left = left[~hit]
        if not len(left):
            return True
    return False


def test_folded_family_is_perfect():
    family = perfect_hash_family(60, 4)
    assert _perfect_np(family, 60, 4)


def test_family_is_deterministic():
    perfect_hash_family.cache_clear()
    first = perfect_hash_family(10, 3)
    perfect_hash_family.cache_clear()
    assert perfect_hash_family(10, 3) == first


def test_family_rejects():
    with pytest.raises(ValueError):
        perfect_hash_family(3, 4)


def test_zero_trials_only_finds_colorless_outcomes():
    inst = generate(Mmm(["u1", "u2"], ["v1", "v2"], [("u1", "v1"), ("u2", "v2")], 2), Concept.NASH)
    res = solve_ns_star(inst, RANDOMIZED, seed=3, trials=0)
    assert not res.found or res.details["B"] == []
