"""Robust matchings and independent sets under an unknown cardinality bound."""
from .errors import InputError, InternalError, ResourceError
from .exact import SQRT2, QSqrt2
from .systems import (
    BMatchingSystem,
    ExplicitSystem,
    IndependenceSystem,
    MatchingSystem,
    MatroidIntersection,
    PartitionMatroid,
    UniformMatroid,
    WeightedGraph,
    enumerate_independent,
    make_system,
    top_k,
)
from .solvers import OptProfile, bipartite_profile, greedy, lex_max, max_weight_at_most_k, opt_profile
from .robust import (
    PriorityDistribution,
    RandomizedSolution,
    RobustnessReport,
    randomized_robust,
    randomized_robustness,
    robustness,
    squared_weight_solution,
)
from .game import build_matrix, solve_game, verify_solution

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "InternalError",
    "ResourceError",
    "SQRT2",
    "QSqrt2",
    "BMatchingSystem",
    "ExplicitSystem",
    "IndependenceSystem",
    "MatchingSystem",
    "MatroidIntersection",
    "PartitionMatroid",
    "UniformMatroid",
    "WeightedGraph",
    "enumerate_independent",
    "make_system",
    "top_k",
    "OptProfile",
    "bipartite_profile",
    "greedy",
    "lex_max",
    "max_weight_at_most_k",
    "opt_profile",
    "PriorityDistribution",
    "RandomizedSolution",
    "RobustnessReport",
    "randomized_robust",
    "randomized_robustness",
    "robustness",
    "squared_weight_solution",
    "build_matrix",
    "solve_game",
    "verify_solution",
]
