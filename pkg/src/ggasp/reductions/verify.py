"""Compare source verdicts with stability verdicts of the generated instances.

Rainbow sources are checked in both directions (the path solver for Nash
stability, the core components solver on independent parts for the core).
Matching sources go through the brute-force oracle.  For (3,B2) formulas the
generated instances have far too many activities for any exact solver, so
only the constructions' structure and the forward direction (a satisfying
assignment yields a stable outcome) are checked.
"""
from __future__ import annotations

from ..fpt.components import solve_core_components
from ..fpt.path import solve_ns_path
from ..model import Instance, TopologyTag, classify_topology, is_forest
from ..oracle import oracle_find_stable
from ..stability import (
    Concept,
    check_core_forest,
    check_individually_rational,
    find_ns_deviation,
)
from .generators import generate
from .sources import Formula3B2, Mmm, RainbowPath, is_yes, satisfying_assignment
from .witnesses import mmm_witness, rainbow_witness, sat_witness


def expected_shape(src, concept: Concept) -> tuple[int, int]:
    """(players, classes) of the generated instance."""
    if isinstance(src, RainbowPath):
        q = src.q
        base = len(src.vertices) + len(src.edges) + (src.q - src.k)
        return (base + 2 * q, q) if concept is Concept.NASH else (base + 3 * q, 2 * q)
    if isinstance(src, Mmm):
        if concept is Concept.NASH:
            return len(src.V) + 2, len(src.U) + 2
        return len(src.V) + 3, len(src.U) + 3
    nx, nc = len(src.variables), len(src.clauses)
    if concept is Concept.NASH:
        return 4 * nx + 4 * nc, 7 * nx + nc
    return 6 * nx + 3 * nc, 9 * nx


def check_structure(src, inst: Instance, concept: Concept) -> bool:
    """Counts and topology match the construction."""
    if (inst.n, inst.p) != expected_shape(src, concept):
        return False
    topo = classify_topology(inst)
    if isinstance(src, RainbowPath):
        return topo.tag is TopologyTag.PATH
    if isinstance(src, Mmm):
        # a three-player star is reported as a path
        return topo.tag is TopologyTag.STAR or (topo.tag is TopologyTag.PATH and inst.n == 3)
    limit = 4 if concept is Concept.NASH else 3
    return topo.tag is TopologyTag.SMALL_COMPONENTS and topo.c <= limit and is_forest(inst)


def certify(inst: Instance, pi, concept: Concept) -> bool:
    if check_individually_rational(inst, pi):
        return False
    if concept is Concept.NASH:
        return find_ns_deviation(inst, pi) is None
    return check_core_forest(inst, pi) is None


def stable_outcome_exists(src, inst: Instance, concept: Concept) -> bool:
    if isinstance(src, RainbowPath):
        if concept is Concept.NASH:
            return solve_ns_path(inst).found
        return solve_core_components(inst, max_component=inst.n, split=True).found
    if isinstance(src, Mmm):
        return oracle_find_stable(inst, concept).found
    raise ValueError("no exact solver reaches the (3,B2) constructions")


def verify_reduction(src, concept: Concept | str) -> bool:
    """True iff the source verdict and the existence of a stable outcome
    agree, and the forward witness (when the source is a yes-instance) is
    stable.  For (3,B2) formulas only structure and the forward direction
    are checked; an unsatisfiable formula passes on structure alone."""
    concept = Concept(concept) if isinstance(concept, str) else concept
    inst = generate(src, concept)
    if not check_structure(src, inst, concept):
        return False

    if isinstance(src, Formula3B2):
        truth = satisfying_assignment(src)
        if truth is None:
            return True
        return certify(inst, sat_witness(src, inst, concept, truth), concept)

    yes = is_yes(src)
    if yes:
        build = rainbow_witness if isinstance(src, RainbowPath) else mmm_witness
        if not certify(inst, build(src, inst, concept), concept):
            return False
    return stable_outcome_exists(src, inst, concept) == yes


__all__ = [
    "certify",
    "check_structure",
    "expected_shape",
    "stable_outcome_exists",
    "verify_reduction",
]
