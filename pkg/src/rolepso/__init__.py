"""Role-based diversity-enhancing PSO variants, benchmarks, and analysis."""

from rolepso.config import ALGORITHMS, AlgorithmConfig, default_config
from rolepso.engine import active_engine
from rolepso.problems import (
    BenchmarkProblem,
    OptimumInfo,
    known_optimum,
    list_problems,
    make_problem,
)
from rolepso.swarm import (
    EvaluationError,
    ParticleState,
    RunResult,
    SwarmState,
    initialize_swarm,
    run,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "AlgorithmConfig",
    "BenchmarkProblem",
    "EvaluationError",
    "OptimumInfo",
    "ParticleState",
    "RunResult",
    "SwarmState",
    "active_engine",
    "default_config",
    "initialize_swarm",
    "known_optimum",
    "list_problems",
    "make_problem",
    "run",
    "step",
]
