"""Experiment grid execution with deterministic seeding and CSV persistence.

Seeds derive from a documented hash so any implementation can reproduce
them: ``sha256("{base_seed}|{algorithm}|{problem}|{dimension}|{repetition}")``
interpreted big-endian over the first 8 digest bytes.  Problem instances use
the same hash with the algorithm slot pinned to ``"problem-instance"`` and
the repetition pinned to ``-1``, so every algorithm faces the identical
shift/rotation on a given (problem, dimension).
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from rolepso import swarm
from rolepso.config import AlgorithmConfig
from rolepso.problems import make_problem

CSV_HEADER = [
    "algorithm",
    "problem",
    "dimension",
    "repetition",
    "seed",
    "final_best_fitness",
    "evaluations",
    "wall_time_s",
]

PROBLEM_SENTINEL_ALGORITHM = "problem-instance"
PROBLEM_SENTINEL_REPETITION = -1


def derive_seed(
    base_seed: int,
    algorithm_name: str,
    problem_name: str,
    dimension: int,
    repetition_index: int,
) -> int:
    """Stable 64-bit seed for one run; distinct tuples practically never collide."""
    key = f"{base_seed}|{algorithm_name}|{problem_name}|{dimension}|{repetition_index}"
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def problem_seed(base_seed: int, problem_name: str, dimension: int) -> int:
    """Instance seed shared by all algorithms on (problem, dimension)."""
    return derive_seed(
        base_seed,
        PROBLEM_SENTINEL_ALGORITHM,
        problem_name,
        dimension,
        PROBLEM_SENTINEL_REPETITION,
    )


@dataclass(frozen=True)
class ExperimentPlan:
    """Full grid: every (algorithm, problem, repetition) runs exactly once."""

    algorithms: tuple[AlgorithmConfig, ...]
    problems: tuple[tuple[str, int], ...]
    repetitions: int
    base_seed: int = 0
    max_evaluations: int = 25_000
    swarm_size: int = 100

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        names = [a.name for a in self.algorithms]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate algorithm names in plan: {names}")
        if len(set(self.problems)) != len(self.problems):
            raise ValueError("duplicate (problem, dimension) pairs in plan")

    def descriptor(self) -> dict:
        return {
            "base_seed": self.base_seed,
            "repetitions": self.repetitions,
            "max_evaluations": self.max_evaluations,
            "swarm_size": self.swarm_size,
            "problems": [[name, dim] for name, dim in self.problems],
            "algorithms": [
                {
                    "name": a.name,
                    "variant": a.variant,
                    "omega": a.omega,
                    "c1": a.c1,
                    "c2": a.c2,
                    "role_coefficient": a.role_coefficient,
                    "role_fraction": a.role_fraction,
                    "lambda": a.lam,
                    "sigma": a.sigma,
                }
                for a in self.algorithms
            ],
        }

    def tasks(self) -> list[tuple[AlgorithmConfig, str, int, int]]:
        out = []
        for name, dim in self.problems:
            for algo in self.algorithms:
                for rep in range(self.repetitions):
                    out.append((algo, name, dim, rep))
        return out


@dataclass
class RunRecord:
    """One row of the results table."""

    algorithm: str
    problem: str
    dimension: int
    repetition: int
    seed: int
    final_best_fitness: float
    evaluations: int
    wall_time_s: float
    trajectory: list[tuple[int, float]] = field(default_factory=list, repr=False)
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    def key(self) -> tuple:
        return (self.algorithm, self.problem, self.dimension, self.repetition)


@dataclass
class ResultSet:
    plan: dict
    records: list[RunRecord]

    @property
    def failures(self) -> list[RunRecord]:
        return [r for r in self.records if r.failed]

    def sort_canonical(self) -> None:
        self.records.sort(key=RunRecord.key)


def _execute_task(args) -> RunRecord:
    algo, problem_name, dimension, repetition, base_seed, budget, swarm_size = args
    cfg = replace(algo, max_evaluations=budget, swarm_size=swarm_size)
    seed = derive_seed(base_seed, cfg.name, problem_name, dimension, repetition)
    started = time.perf_counter()
    try:
        problem = make_problem(
            problem_name, dimension, problem_seed(base_seed, problem_name, dimension)
        )
        result = swarm.run(problem, cfg, seed)
    except Exception as exc:  # contained: one bad run must not sink the grid
        return RunRecord(
            algorithm=cfg.name,
            problem=problem_name,
            dimension=dimension,
            repetition=repetition,
            seed=seed,
            final_best_fitness=math.nan,
            evaluations=0,
            wall_time_s=time.perf_counter() - started,
            error=f"{type(exc).__name__}: {exc}",
        )
    return RunRecord(
        algorithm=cfg.name,
        problem=problem_name,
        dimension=dimension,
        repetition=repetition,
        seed=seed,
        final_best_fitness=result.final_best_fitness,
        evaluations=result.evaluations_used,
        wall_time_s=result.wall_time_s,
        trajectory=result.trajectory,
    )


def execute(
    plan: ExperimentPlan,
    parallelism: int = 1,
    resume_records: list[RunRecord] | None = None,
    progress=None,
) -> ResultSet:
    """Run the whole grid; the outcome is independent of the worker count.

    With ``resume_records``, tuples already present are kept as-is and only
    the missing runs execute.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be at least 1")
    done: dict[tuple, RunRecord] = {}
    if resume_records:
        done = {r.key(): r for r in resume_records}
    args = [
        (algo, name, dim, rep, plan.base_seed, plan.max_evaluations, plan.swarm_size)
        for algo, name, dim, rep in plan.tasks()
        if (algo.name, name, dim, rep) not in done
    ]
    records = list(done.values())
    if parallelism == 1 or len(args) <= 1:
        for a in args:
            records.append(_execute_task(a))
            if progress is not None:
                progress(records[-1])
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            for record in pool.map(_execute_task, args, chunksize=1):
                records.append(record)
                if progress is not None:
                    progress(record)
    results = ResultSet(plan=plan.descriptor(), records=records)
    results.sort_canonical()
    return results


class ResultsFormatError(ValueError):
    """A results file does not match the documented schema."""


def _results_paths(path: str | Path) -> tuple[Path, Path]:
    path = Path(path)
    if path.suffix == ".csv":
        return path, path.with_name(path.stem + "_plan.json")
    return path / "results.csv", path / "plan.json"


def write_results(results: ResultSet, path: str | Path) -> tuple[Path, Path]:
    """Persist records as CSV plus a JSON sidecar with the plan and failures.

    ``path`` may be a directory (writes results.csv and plan.json inside)
    or a .csv file path (the sidecar lands next to it).  Trajectories are
    not part of the results schema; export them separately if needed.
    """
    csv_path, plan_path = _results_paths(path)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in results.records:
            writer.writerow(
                [
                    r.algorithm,
                    r.problem,
                    r.dimension,
                    r.repetition,
                    r.seed,
                    repr(r.final_best_fitness),
                    r.evaluations,
                    repr(r.wall_time_s),
                ]
            )
    sidecar = {
        "plan": results.plan,
        "failures": [
            {
                "algorithm": r.algorithm,
                "problem": r.problem,
                "dimension": r.dimension,
                "repetition": r.repetition,
                "error": r.error,
            }
            for r in results.failures
        ],
    }
    with open(plan_path, "w") as fh:
        json.dump(sidecar, fh, indent=2)
    return csv_path, plan_path


def read_results(path: str | Path) -> ResultSet:
    """Round-trip counterpart of write_results (trajectories excluded)."""
    csv_path, plan_path = _results_paths(path)
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ResultsFormatError(f"{csv_path}: empty results file")
        missing = [c for c in CSV_HEADER if c not in reader.fieldnames]
        if missing:
            raise ResultsFormatError(
                f"{csv_path}: missing column(s) {', '.join(missing)}"
            )
        records = []
        for line_no, row in enumerate(reader, start=2):
            try:
                records.append(
                    RunRecord(
                        algorithm=row["algorithm"],
                        problem=row["problem"],
                        dimension=int(row["dimension"]),
                        repetition=int(row["repetition"]),
                        seed=int(row["seed"]),
                        final_best_fitness=float(row["final_best_fitness"]),
                        evaluations=int(row["evaluations"]),
                        wall_time_s=float(row["wall_time_s"]),
                    )
                )
            except (TypeError, ValueError) as exc:
                raise ResultsFormatError(f"{csv_path}:{line_no}: {exc}") from exc
    plan: dict = {}
    if plan_path.exists():
        with open(plan_path) as fh:
            sidecar = json.load(fh)
        plan = sidecar.get("plan", {})
        failures = {
            (f["algorithm"], f["problem"], f["dimension"], f["repetition"]): f["error"]
            for f in sidecar.get("failures", [])
        }
        for r in records:
            r.error = failures.get(r.key())
    else:
        for r in records:
            if math.isnan(r.final_best_fitness):
                r.error = "failed (no sidecar with details)"
    results = ResultSet(plan=plan, records=records)
    results.sort_canonical()
    return results


def write_trajectories(results: ResultSet, path: str | Path) -> Path:
    """Optional long-format export of the per-iteration best-fitness curves."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["algorithm", "problem", "dimension", "repetition", "iteration",
             "best_fitness"]
        )
        for r in results.records:
            for iteration, best in r.trajectory:
                writer.writerow(
                    [r.algorithm, r.problem, r.dimension, r.repetition,
                     iteration, repr(best)]
                )
    return path
