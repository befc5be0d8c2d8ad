from rolepso.problems.functions import BASE_INDEX, BASE_ORDER, REFERENCE
from rolepso.problems.rotations import random_orthogonal, random_shift
from rolepso.problems.suite import (
    CATALOG,
    TUNING_ONLY,
    BenchmarkProblem,
    OptimumInfo,
    UnknownProblemError,
    is_tuning_only,
    known_optimum,
    list_problems,
    make_problem,
    problem_from_descriptor,
)

__all__ = [
    "BASE_INDEX",
    "BASE_ORDER",
    "REFERENCE",
    "CATALOG",
    "TUNING_ONLY",
    "BenchmarkProblem",
    "OptimumInfo",
    "UnknownProblemError",
    "is_tuning_only",
    "known_optimum",
    "list_problems",
    "make_problem",
    "problem_from_descriptor",
    "random_orthogonal",
    "random_shift",
]
