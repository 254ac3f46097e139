"""Exact solvers for single-copy instances on restricted graphs."""
from .components import solve_core_components, solve_ns_components
from .hashing import perfect_hash_family
from .path import solve_ns_path
from .star import DERANDOMIZED, RANDOMIZED, solve_ns_star

__all__ = [
    "DERANDOMIZED",
    "RANDOMIZED",
    "perfect_hash_family",
    "solve_core_components",
    "solve_ns_components",
    "solve_ns_path",
    "solve_ns_star",
]
