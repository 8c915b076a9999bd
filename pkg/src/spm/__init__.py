"""Solvers for Second Price Matching (2PM) and Second Price Perfect Matching (2PPM)."""
from .errors import InputError, PreconditionError, SizeGuardError, SpmError
from .graph import (
    BipartiteInstance,
    Kind,
    Multigraph,
    Solution,
    make_solution,
    neighborhood,
    profit,
    validate_solution,
)
from .fileio import parse_instance, parse_solution, serialize_instance, serialize_solution

__all__ = [
    "BipartiteInstance",
    "InputError",
    "Kind",
    "Multigraph",
    "PreconditionError",
    "SizeGuardError",
    "Solution",
    "SpmError",
    "make_solution",
    "neighborhood",
    "parse_instance",
    "parse_solution",
    "profit",
    "serialize_instance",
    "serialize_solution",
    "validate_solution",
]
