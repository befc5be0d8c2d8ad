"""Swarm state machine: initialization, iteration, and full optimization runs.

One run owns a single seeded generator; every random draw flows through it
in a fixed order (initial positions, role assignment, then per iteration a
uniform block followed by a normal block), so a (problem, config, seed)
triple always reproduces the identical trajectory on a given engine.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from rolepso import engine as engine_selector
from rolepso import roles
from rolepso.config import AlgorithmConfig
from rolepso.problems.suite import BenchmarkProblem


class EvaluationError(RuntimeError):
    """An objective evaluation produced a non-finite value; the run aborts."""


@dataclass
class ParticleState:
    """Snapshot of one particle; arrays are copies of the swarm's storage."""

    index: int
    position: np.ndarray
    velocity: np.ndarray
    personal_best_position: np.ndarray
    personal_best_fitness: float
    personal_worst_position: np.ndarray
    personal_worst_fitness: float
    role: str


class SwarmState:
    """Population arrays plus global memories, counters, and the run's rng."""

    def __init__(
        self,
        positions: np.ndarray,
        velocities: np.ndarray,
        best_positions: np.ndarray,
        best_fitness: np.ndarray,
        worst_positions: np.ndarray,
        worst_fitness: np.ndarray,
        role_ids: np.ndarray,
        rng: np.random.Generator,
        noise_rng: np.random.Generator | None,
        engine_module,
    ):
        self.positions = positions
        self.velocities = velocities
        self.best_positions = best_positions
        self.best_fitness = best_fitness
        self.worst_positions = worst_positions
        self.worst_fitness = worst_fitness
        self.role_ids = role_ids
        self.rng = rng
        self.noise_rng = noise_rng
        self.engine = engine_module
        self.iteration = 0
        self.evaluations_used = 0

        ib = int(np.argmin(best_fitness))
        iw = int(np.argmax(worst_fitness))
        self._gb_pos = best_positions[ib].copy()
        self._gb_fit = np.array([best_fitness[ib]])
        self._gw_pos = worst_positions[iw].copy()
        self._gw_fit = np.array([worst_fitness[iw]])

        dim = positions.shape[1]
        u_off, z_off = roles.draw_layout(role_ids, dim)
        u_off.setflags(write=False)
        z_off.setflags(write=False)
        self._u_off = u_off
        self._z_off = z_off

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    @property
    def dimension(self) -> int:
        return self.positions.shape[1]

    @property
    def global_best_position(self) -> np.ndarray:
        return self._gb_pos

    @property
    def global_best_fitness(self) -> float:
        return float(self._gb_fit[0])

    @property
    def global_worst_position(self) -> np.ndarray:
        return self._gw_pos

    @property
    def global_worst_fitness(self) -> float:
        return float(self._gw_fit[0])

    def particle(self, i: int) -> ParticleState:
        return ParticleState(
            index=i,
            position=self.positions[i].copy(),
            velocity=self.velocities[i].copy(),
            personal_best_position=self.best_positions[i].copy(),
            personal_best_fitness=float(self.best_fitness[i]),
            personal_worst_position=self.worst_positions[i].copy(),
            personal_worst_fitness=float(self.worst_fitness[i]),
            role=roles.ROLES[self.role_ids[i]],
        )

    @property
    def particles(self) -> list[ParticleState]:
        return [self.particle(i) for i in range(self.size)]

    def state_equal(self, other: "SwarmState") -> bool:
        """Bitwise equality of all arrays, counters, and generator state."""
        arrays = (
            "positions",
            "velocities",
            "best_positions",
            "best_fitness",
            "worst_positions",
            "worst_fitness",
            "role_ids",
            "_gb_pos",
            "_gb_fit",
            "_gw_pos",
            "_gw_fit",
        )
        if any(
            not np.array_equal(getattr(self, a), getattr(other, a)) for a in arrays
        ):
            return False
        if (self.iteration, self.evaluations_used) != (
            other.iteration,
            other.evaluations_used,
        ):
            return False
        return self.rng.bit_generator.state == other.rng.bit_generator.state


@dataclass
class RunResult:
    """Outcome of one optimization run."""

    final_best_fitness: float
    final_best_position: np.ndarray
    trajectory: list[tuple[int, float]] = field(repr=False)
    evaluations_used: int = 0
    seed: int = 0
    wall_time_s: float = 0.0


def clip_to_bounds(position: np.ndarray, bounds) -> np.ndarray:
    """Project each out-of-bounds coordinate to the nearest feasible value.

    ``bounds`` is either a ``(lower, upper)`` pair of vectors/scalars or a
    per-dimension sequence of ``[low, high]`` pairs.
    """
    bounds = np.asarray(bounds, dtype=np.float64)
    if bounds.ndim == 2 and bounds.shape[0] == len(position):
        lower, upper = bounds[:, 0], bounds[:, 1]
    else:
        lower, upper = bounds[0], bounds[1]
    if np.any(lower >= upper):
        raise ValueError("every dimension needs low < high")
    return np.clip(position, lower, upper)


def velocity_update(
    particle: ParticleState,
    swarm: SwarmState,
    config: AlgorithmConfig,
    rng: np.random.Generator,
) -> np.ndarray:
    """Single-particle form of the velocity rule, drawing from ``rng``."""
    rid = roles.ROLE_IDS[particle.role]
    u = rng.random(roles.uniform_draw_count(rid, len(particle.position)))
    lam = config.lam if config.lam is not None else 0.0
    return roles.role_velocity(
        rid,
        u,
        particle.position,
        particle.velocity,
        particle.personal_best_position,
        particle.personal_worst_position,
        swarm.global_best_position,
        swarm.global_worst_position,
        config.omega,
        config.c1,
        config.c2,
        config.role_coefficient,
        lam,
    )


def position_update(
    particle: ParticleState,
    new_velocity: np.ndarray,
    config: AlgorithmConfig,
    rng: np.random.Generator,
) -> np.ndarray:
    """New position before clipping; drifters add their Gaussian jitter."""
    position = particle.position + new_velocity
    if particle.role == "drifter":
        sigma = config.sigma if config.sigma is not None else 0.0
        position = position + sigma * rng.standard_normal(len(position))
    return position


def update_memories(
    particle: ParticleState, swarm: SwarmState, new_fitness: float
) -> None:
    """Refresh personal and global memories after evaluating the particle.

    Strict comparisons: a tie never replaces a memory.  Applies identically
    to every role.
    """
    if not np.isfinite(new_fitness):
        raise EvaluationError(
            f"non-finite fitness {new_fitness!r} for particle {particle.index}"
        )
    i = particle.index
    if new_fitness < swarm.best_fitness[i]:
        swarm.best_positions[i] = particle.position
        swarm.best_fitness[i] = new_fitness
        particle.personal_best_position = particle.position.copy()
        particle.personal_best_fitness = new_fitness
    if new_fitness > swarm.worst_fitness[i]:
        swarm.worst_positions[i] = particle.position
        swarm.worst_fitness[i] = new_fitness
        particle.personal_worst_position = particle.position.copy()
        particle.personal_worst_fitness = new_fitness
    if new_fitness < swarm._gb_fit[0]:
        swarm._gb_pos[:] = particle.position
        swarm._gb_fit[0] = new_fitness
    if new_fitness > swarm._gw_fit[0]:
        swarm._gw_pos[:] = particle.position
        swarm._gw_fit[0] = new_fitness


def initialize_swarm(
    problem: BenchmarkProblem,
    config: AlgorithmConfig,
    seed: int,
    engine_module=None,
) -> SwarmState:
    """Seeded swarm: uniform positions, zero velocities, memories at start.

    Personal worst starts equal to personal best, the global memories at the
    population extremes; the initial evaluation sweep counts N evaluations.
    """
    if problem.dimension < 1:
        raise ValueError("problem dimension must be at least 1")
    eng = engine_module or engine_selector.active
    n, d = config.swarm_size, problem.dimension
    rng = np.random.default_rng(seed)
    u = rng.random((n, d))
    positions = problem.lower + u * (problem.upper - problem.lower)
    tags = roles.assign_roles(
        n, config.effective_fraction, config.variant, rng
    )
    role_ids = np.array([roles.ROLE_IDS[t] for t in tags], dtype=np.int8)
    role_ids.setflags(write=False)

    noise_rng = (
        np.random.default_rng(problem.noise_seed) if problem.stochastic else None
    )
    noise = noise_rng.random(n * d) if noise_rng is not None else None
    fits, bad = eng.evaluate_positions(problem, positions, noise)
    if bad >= 0:
        raise EvaluationError(
            f"non-finite fitness {fits[bad]!r} at initialization "
            f"(particle {bad}, problem {problem.name})"
        )
    swarm = SwarmState(
        positions=positions,
        velocities=np.zeros((n, d)),
        best_positions=positions.copy(),
        best_fitness=fits.copy(),
        worst_positions=positions.copy(),
        worst_fitness=fits.copy(),
        role_ids=role_ids,
        rng=rng,
        noise_rng=noise_rng,
        engine_module=eng,
    )
    swarm.evaluations_used = n
    return swarm


_EMPTY = np.empty(0)


def step(
    problem: BenchmarkProblem, config: AlgorithmConfig, swarm: SwarmState
) -> SwarmState:
    """One full sweep: every particle moves, is clipped, evaluated, recorded.

    Global memories refresh after each particle's evaluation, so particles
    later in index order react to improvements made earlier in the same
    iteration.
    """
    n, d = swarm.size, swarm.dimension
    u_off, z_off = swarm._u_off, swarm._z_off
    uniforms = swarm.rng.random(int(u_off[-1]))
    normals = swarm.rng.standard_normal(int(z_off[-1])) if z_off[-1] else _EMPTY
    noise = swarm.noise_rng.random(n * d) if swarm.noise_rng is not None else None
    bad = swarm.engine.run_sweep(
        problem,
        config,
        swarm.positions,
        swarm.velocities,
        swarm.best_positions,
        swarm.best_fitness,
        swarm.worst_positions,
        swarm.worst_fitness,
        swarm._gb_pos,
        swarm._gb_fit,
        swarm._gw_pos,
        swarm._gw_fit,
        swarm.role_ids,
        uniforms,
        u_off,
        normals,
        z_off,
        noise,
    )
    if bad >= 0:
        raise EvaluationError(
            f"non-finite fitness for particle {bad} at iteration "
            f"{swarm.iteration + 1} (problem {problem.name})"
        )
    swarm.iteration += 1
    swarm.evaluations_used += n
    if not (
        np.all(swarm.positions >= problem.lower)
        and np.all(swarm.positions <= problem.upper)
    ):
        raise EvaluationError(
            f"position escaped the feasible box at iteration {swarm.iteration} "
            f"(problem {problem.name})"
        )
    return swarm


def run(
    problem: BenchmarkProblem,
    config: AlgorithmConfig,
    seed: int,
    engine_module=None,
) -> RunResult:
    """Initialize, then iterate until the next sweep would exceed the budget."""
    cfg = config.resolved_for(problem)
    start = time.perf_counter()
    try:
        swarm = initialize_swarm(problem, cfg, seed, engine_module)
        trajectory = [(0, swarm.global_best_fitness)]
        while swarm.evaluations_used + cfg.swarm_size <= cfg.max_evaluations:
            step(problem, cfg, swarm)
            trajectory.append((swarm.iteration, swarm.global_best_fitness))
    except EvaluationError as exc:
        raise EvaluationError(
            f"{exc} [algorithm {cfg.name}, problem {problem.name} "
            f"d={problem.dimension}, seed {seed}]"
        ) from exc
    return RunResult(
        final_best_fitness=swarm.global_best_fitness,
        final_best_position=swarm.global_best_position.copy(),
        trajectory=trajectory,
        evaluations_used=swarm.evaluations_used,
        seed=seed,
        wall_time_s=time.perf_counter() - start,
    )
