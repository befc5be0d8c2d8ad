"""Swarm initialization, stepping, memories, and full runs."""

import dataclasses

import numpy as np
import pytest

from rolepso import default_config, make_problem
from rolepso import swarm as sw
from rolepso.engine import load_engine
from rolepso.problems import REFERENCE


@pytest.fixture(scope="module")
def sphere10():
    return make_problem("Sphere", 10, seed=0)


class TestInitialize:
    def test_positions_within_bounds(self):
        problem = make_problem("Sphere", 2, seed=1)
        state = sw.initialize_swarm(problem, default_config("PSO", swarm_size=50), 9)
        assert np.all(state.positions >= problem.lower)
        assert np.all(state.positions <= problem.upper)

    def test_bitwise_deterministic(self, sphere10):
        cfg = default_config("WandererPSO", swarm_size=30)
        a = sw.initialize_swarm(sphere10, cfg, seed=5)
        b = sw.initialize_swarm(sphere10, cfg, seed=5)
        assert a.state_equal(b)

    def test_global_best_is_min_of_initial_sample(self):
        # independent recompute: replay the documented draw order by hand
        problem = make_problem("Sphere", 3, seed=2)
        cfg = default_config("PSO", swarm_size=100)
        state = sw.initialize_swarm(
            problem, cfg, seed=42, engine_module=load_engine("python")
        )
        rng = np.random.default_rng(42)
        u = rng.random((100, 3))
        pos = problem.lower + u * (problem.upper - problem.lower)
        fits = [REFERENCE["sphere"](p) for p in pos]
        assert state.global_best_fitness == min(fits)
        assert state.global_worst_fitness == max(fits)
        assert state.evaluations_used == 100

    def test_velocities_zero_and_memories_seeded(self, sphere10):
        state = sw.initialize_swarm(sphere10, default_config("PSO", swarm_size=20), 3)
        assert not state.velocities.any()
        assert np.array_equal(state.best_positions, state.positions)
        assert np.array_equal(state.worst_positions, state.positions)
        assert np.array_equal(state.best_fitness, state.worst_fitness)


class TestClip:
    def test_projects_to_nearest_bound(self):
        out = sw.clip_to_bounds(np.array([6.0, -7.0, 0.0]), [[-5, 5]] * 3)
        assert out.tolist() == [5.0, -5.0, 0.0]

    def test_identity_inside(self):
        x = np.array([0.5, -4.9])
        assert np.array_equal(sw.clip_to_bounds(x, [[-5, 5], [-5, 5]]), x)

    def test_boundary_is_feasible(self):
        out = sw.clip_to_bounds(np.array([-5.0, 5.0]), [[-5, 5], [-5, 5]])
        assert out.tolist() == [-5.0, 5.0]

    def test_degenerate_bounds_rejected(self):
        with pytest.raises(ValueError):
            sw.clip_to_bounds(np.zeros(2), [[1, 1], [0, 2]])


class TestPositionUpdate:
    def particle(self, role, position):
        d = len(position)
        return sw.ParticleState(
            index=0, position=np.asarray(position, dtype=float),
            velocity=np.zeros(d), personal_best_position=np.zeros(d),
            personal_best_fitness=0.0, personal_worst_position=np.zeros(d),
            personal_worst_fitness=0.0, role=role,
        )

    def test_plain_vector_addition(self):
        p = self.particle("standard", [1.0, 2.0])
        out = sw.position_update(
            p, np.array([0.5, -1.0]), default_config("PSO"), np.random.default_rng(0)
        )
        assert out.tolist() == [1.5, 1.0]

    def test_drifter_with_zero_sigma_matches_standard(self):
        p = self.particle("drifter", [1.0, 2.0])
        cfg = default_config("DrifterPSO", sigma=0.0)
        out = sw.position_update(p, np.array([0.5, -1.0]), cfg, np.random.default_rng(0))
        assert out.tolist() == [1.5, 1.0]

    def test_drifter_noise_moments(self):
        # law-of-large-numbers check against the generator, d=1
        cfg = default_config("DrifterPSO", sigma=1.0)
        rng = np.random.default_rng(99)
        p = self.particle("drifter", [0.0])
        eps = np.array(
            [sw.position_update(p, np.zeros(1), cfg, rng)[0] for _ in range(10_000)]
        )
        assert abs(eps.mean()) < 0.05
        assert abs(eps.std() - 1.0) < 0.05


class TestUpdateMemories:
    def swarm_one(self, fitness):
        problem = make_problem("Sphere", 2, seed=0)
        state = sw.initialize_swarm(problem, default_config("PSO", swarm_size=2), 1)
        state.best_fitness[0] = fitness
        state.worst_fitness[0] = fitness
        return state

    def test_better_fitness_updates_personal_best(self):
        state = self.swarm_one(5.0)
        p = state.particle(0)
        p.position = np.array([0.25, 0.25])
        sw.update_memories(p, state, 3.0)
        assert state.best_fitness[0] == 3.0
        assert state.best_positions[0].tolist() == [0.25, 0.25]

    def test_tie_does_not_update(self):
        state = self.swarm_one(5.0)
        before = state.best_positions[0].copy()
        sw.update_memories(state.particle(0), state, 5.0)
        assert state.best_fitness[0] == 5.0
        assert np.array_equal(state.best_positions[0], before)

    def test_worse_fitness_updates_personal_worst(self):
        state = self.swarm_one(5.0)
        sw.update_memories(state.particle(0), state, 9.0)
        assert state.worst_fitness[0] == 9.0

    def test_non_finite_fitness_raises(self):
        state = self.swarm_one(5.0)
        with pytest.raises(sw.EvaluationError):
            sw.update_memories(state.particle(0), state, float("nan"))


class TestStep:
    def test_evaluation_accounting(self, sphere10):
        cfg = default_config("PSO", swarm_size=25)
        state = sw.initialize_swarm(sphere10, cfg, 7)
        sw.step(sphere10, cfg.resolved_for(sphere10), state)
        assert state.evaluations_used == 50
        assert state.iteration == 1

    def test_global_best_monotone(self, sphere10):
        cfg = default_config("WandererPSO", swarm_size=20).resolved_for(sphere10)
        state = sw.initialize_swarm(sphere10, cfg, 11)
        best = [state.global_best_fitness]
        for _ in range(30):
            sw.step(sphere10, cfg, state)
            best.append(state.global_best_fitness)
        assert all(b2 <= b1 for b1, b2 in zip(best, best[1:]))

    def test_zero_fraction_variant_is_bitwise_standard(self, sphere10):
        std = default_config("PSO", swarm_size=20).resolved_for(sphere10)
        reb = dataclasses.replace(
            default_config("RebelPSO", swarm_size=20).resolved_for(sphere10),
            role_fraction=0.0,
        )
        a = sw.initialize_swarm(sphere10, std, seed=13)
        b = sw.initialize_swarm(sphere10, reb, seed=13)
        for _ in range(5):
            sw.step(sphere10, std, a)
            sw.step(sphere10, reb, b)
        assert a.state_equal(b)

    def test_memory_ordering_invariants(self, sphere10):
        cfg = default_config("ContrarianPSO", swarm_size=20).resolved_for(sphere10)
        state = sw.initialize_swarm(sphere10, cfg, 3)
        for _ in range(20):
            sw.step(sphere10, cfg, state)
            assert np.all(state.best_fitness <= state.worst_fitness)
            assert state.global_best_fitness <= state.global_worst_fitness
            assert state.global_best_fitness == state.best_fitness.min()


class TestRun:
    def test_final_no_worse_than_initial(self, sphere10):
        result = sw.run(sphere10, default_config("PSO"), seed=1)
        assert result.final_best_fitness <= result.trajectory[0][1]

    def test_same_seed_same_payload(self, sphere10):
        cfg = default_config("DrifterPSO", swarm_size=20, max_evaluations=2000)
        r1 = sw.run(sphere10, cfg, seed=5)
        r2 = sw.run(sphere10, cfg, seed=5)
        assert r1.final_best_fitness == r2.final_best_fitness
        assert np.array_equal(r1.final_best_position, r2.final_best_position)
        assert r1.trajectory == r2.trajectory
        assert r1.evaluations_used == r2.evaluations_used

    def test_budget_exactness(self, sphere10):
        for budget in (2000, 2050, 2099):
            cfg = default_config("PSO", swarm_size=100, max_evaluations=budget)
            result = sw.run(sphere10, cfg, seed=2)
            assert result.evaluations_used <= budget
            assert budget - result.evaluations_used < 100

    def test_trajectory_length_matches_iterations(self, sphere10):
        cfg = default_config("PSO", swarm_size=100, max_evaluations=25_000)
        result = sw.run(sphere10, cfg, seed=2)
        assert len(result.trajectory) == 250
        assert result.trajectory[0][0] == 0
        assert result.trajectory[-1][0] == 249

    def test_sphere_regression_baseline(self, sphere10):
        # regression guard: with the default budget, plain PSO must improve
        # the initial sample by at least two orders of magnitude in median
        finals, initials = [], []
        cfg = default_config("PSO")
        for seed in range(20):
            result = sw.run(sphere10, cfg, seed=seed)
            finals.append(result.final_best_fitness)
            initials.append(result.trajectory[0][1])
        assert np.median(finals) < 1e-2 * np.median(initials)


def test_velocity_update_public_op_matches_rule(sphere10):
    # the single-particle API consumes the generator exactly like the rule
    from rolepso import roles

    cfg = default_config("WandererPSO", lam=0.3)
    state = sw.initialize_swarm(sphere10, cfg, 21)
    particle = state.particle(3)
    particle.role = "wanderer"
    rng1 = np.random.default_rng(77)
    rng2 = np.random.default_rng(77)
    got = sw.velocity_update(particle, state, cfg, rng1)
    u = rng2.random(roles.uniform_draw_count(roles.WANDERER, 10))
    want = roles.role_velocity(
        roles.WANDERER, u, particle.position, particle.velocity,
        particle.personal_best_position, particle.personal_worst_position,
        state.global_best_position, state.global_worst_position,
        cfg.omega, cfg.c1, cfg.c2, cfg.role_coefficient, cfg.lam,
    )
    assert np.array_equal(got, want)
