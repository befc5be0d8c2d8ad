"""Grid execution, seeding, persistence, and failure containment."""

import hashlib
import math

import numpy as np
import pytest

from rolepso import default_config, make_problem
from rolepso import harness as hz


def small_plan(**overrides):
    spec = dict(
        algorithms=(
            default_config("PSO"),
            default_config("WandererPSO"),
        ),
        problems=(("Sphere", 5), ("Salomon", 5), ("Rastrigin", 5)),
        repetitions=5,
        base_seed=77,
        max_evaluations=600,
        swarm_size=12,
    )
    spec.update(overrides)
    return hz.ExperimentPlan(**spec)


class TestDeriveSeed:
    def test_deterministic(self):
        a = hz.derive_seed(1, "PSO", "Sphere", 100, 0)
        assert a == hz.derive_seed(1, "PSO", "Sphere", 100, 0)

    def test_distinct_repetitions_distinct_seeds(self):
        a = hz.derive_seed(1, "PSO", "Sphere", 100, 0)
        b = hz.derive_seed(1, "PSO", "Sphere", 100, 1)
        assert a != b

    def test_documented_construction(self):
        # independent reimplementation of the published hash recipe
        digest = hashlib.sha256(b"9|RebelPSO|Salomon|50|3").digest()
        want = int.from_bytes(digest[:8], "big")
        assert hz.derive_seed(9, "RebelPSO", "Salomon", 50, 3) == want

    def test_problem_seed_shared_across_algorithms(self):
        seed = hz.problem_seed(5, "Shifted Schwefel", 20)
        a = make_problem("Shifted Schwefel", 20, seed)
        b = make_problem("Shifted Schwefel", 20, seed)
        assert np.array_equal(a.shift, b.shift)


class TestExecute:
    def test_grid_cardinality(self):
        results = hz.execute(small_plan())
        assert len(results.records) == 2 * 3 * 5
        keys = {r.key() for r in results.records}
        assert len(keys) == 30

    def test_empty_algorithm_list(self):
        plan = small_plan(algorithms=())
        results = hz.execute(plan)
        assert results.records == []

    def test_parallelism_does_not_change_outcomes(self):
        plan = small_plan(repetitions=3)
        seq = hz.execute(plan, parallelism=1)
        par = hz.execute(plan, parallelism=2)
        a = sorted((r.key(), r.final_best_fitness) for r in seq.records)
        b = sorted((r.key(), r.final_best_fitness) for r in par.records)
        assert a == b

    def test_budget_uniformity(self):
        results = hz.execute(small_plan(repetitions=2))
        for r in results.records:
            assert r.evaluations <= 600
            assert 600 - r.evaluations < 12

    def test_failure_contained(self):
        # Lennard-Jones at d=7 violates the divisibility contract, so every
        # run in that cell fails while the rest of the grid completes
        plan = small_plan(
            problems=(("Sphere", 7), ("Lennard-Jones Minimum Energy Cluster", 7)),
            repetitions=2,
        )
        results = hz.execute(plan)
        assert len(results.records) == 8
        failed = results.failures
        assert len(failed) == 4
        assert all("multiple of 3" in r.error for r in failed)
        assert all(math.isnan(r.final_best_fitness) for r in failed)
        ok = [r for r in results.records if not r.failed]
        assert all(r.problem == "Sphere" for r in ok)

    def test_resume_skips_existing(self):
        plan = small_plan(repetitions=2)
        first = hz.execute(plan)
        executed = []
        bigger = small_plan(repetitions=4)
        results = hz.execute(
            bigger, resume_records=first.records, progress=lambda r: executed.append(r)
        )
        assert len(results.records) == 2 * 3 * 4
        assert len(executed) == 2 * 3 * 2  # only the new repetitions ran
        by_key = {r.key(): r for r in results.records}
        for r in first.records:
            assert by_key[r.key()].final_best_fitness == r.final_best_fitness

    def test_duplicate_algorithm_names_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            small_plan(algorithms=(default_config("PSO"), default_config("PSO")))

    def test_fair_instancing(self):
        # both algorithms see the same shift on a given (problem, dimension)
        plan = small_plan(problems=(("Shifted Schwefel", 6),), repetitions=1)
        results = hz.execute(plan)
        seeds = {r.seed for r in results.records}
        assert len(seeds) == 2  # run seeds differ per algorithm
        inst = hz.problem_seed(plan.base_seed, "Shifted Schwefel", 6)
        assert np.array_equal(
            make_problem("Shifted Schwefel", 6, inst).shift,
            make_problem("Shifted Schwefel", 6, inst).shift,
        )


class TestPersistence:
    def test_header_exact(self, tmp_path):
        results = hz.execute(small_plan(repetitions=1))
        csv_path, _ = hz.write_results(results, tmp_path)
        header = csv_path.read_text().splitlines()[0]
        assert header == (
            "algorithm,problem,dimension,repetition,seed,"
            "final_best_fitness,evaluations,wall_time_s"
        )

    def test_round_trip_identity(self, tmp_path):
        results = hz.execute(small_plan(repetitions=2))
        hz.write_results(results, tmp_path)
        loaded = hz.read_results(tmp_path)
        assert len(loaded.records) == len(results.records)
        for a, b in zip(results.records, loaded.records):
            assert a.key() == b.key()
            assert a.seed == b.seed
            assert a.final_best_fitness == b.final_best_fitness
            assert a.evaluations == b.evaluations
            assert a.wall_time_s == b.wall_time_s
        assert loaded.plan == results.plan

    def test_missing_column_named_in_error(self, tmp_path):
        path = tmp_path / "results.csv"
        path.write_text("algorithm,problem,dimension\nPSO,Sphere,10\n")
        with pytest.raises(hz.ResultsFormatError, match="repetition"):
            hz.read_results(tmp_path)

    def test_malformed_value_reports_line(self, tmp_path):
        results = hz.execute(small_plan(repetitions=1))
        csv_path, _ = hz.write_results(results, tmp_path)
        lines = csv_path.read_text().splitlines()
        lines[1] = lines[1].replace(lines[1].split(",")[3], "not-a-number", 1)
        csv_path.write_text("\n".join(lines) + "\n")
        with pytest.raises(hz.ResultsFormatError, match=":2"):
            hz.read_results(tmp_path)

    def test_failures_round_trip_via_sidecar(self, tmp_path):
        plan = small_plan(
            problems=(("Lennard-Jones Minimum Energy Cluster", 7),), repetitions=1
        )
        results = hz.execute(plan)
        hz.write_results(results, tmp_path)
        loaded = hz.read_results(tmp_path)
        assert len(loaded.failures) == 2
        assert all("multiple of 3" in r.error for r in loaded.failures)

    def test_trajectory_export(self, tmp_path):
        results = hz.execute(small_plan(repetitions=1))
        out = hz.write_trajectories(results, tmp_path / "traj.csv")
        lines = out.read_text().splitlines()
        assert lines[0] == "algorithm,problem,dimension,repetition,iteration,best_fitness"
        # 600 evals / 12 particles = 50 sweeps; +1 for the initial sample
        assert len(lines) == 1 + len(results.records) * 50

    def test_csv_path_variant(self, tmp_path):
        results = hz.execute(small_plan(repetitions=1))
        csv_path, plan_path = hz.write_results(results, tmp_path / "out.csv")
        assert csv_path.name == "out.csv"
        assert plan_path.name == "out_plan.json"
        assert len(hz.read_results(csv_path).records) == len(results.records)
