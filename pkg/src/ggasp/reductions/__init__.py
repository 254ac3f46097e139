"""Hardness constructions as instance generators, with source solvers."""
from .generators import (
    Fixture,
    fixture,
    generate,
    generate_from_3sat,
    generate_from_mmm,
    generate_from_rainbow,
)
from .sources import (
    Formula3B2,
    Mmm,
    RainbowPath,
    SourceError,
    is_yes,
    random_formula_3b2,
    random_mmm,
    random_rainbow_path,
    solve_source,
    source_from_dict,
    source_to_dict,
)
from .verify import check_structure, expected_shape, verify_reduction
from .witnesses import mmm_witness, rainbow_witness, sat_witness

__all__ = [
    "Fixture",
    "Formula3B2",
    "Mmm",
    "RainbowPath",
    "SourceError",
    "check_structure",
    "expected_shape",
    "fixture",
    "generate",
    "generate_from_3sat",
    "generate_from_mmm",
    "generate_from_rainbow",
    "is_yes",
    "mmm_witness",
    "rainbow_witness",
    "random_formula_3b2",
    "random_mmm",
    "random_rainbow_path",
    "sat_witness",
    "solve_source",
    "source_from_dict",
    "source_to_dict",
    "verify_reduction",
]
