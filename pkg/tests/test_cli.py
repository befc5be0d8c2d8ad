"""Command-line interface contracts."""

import json


from rolepso import cli

ALGORITHM_NAMES = [
    "PSO", "RebelPSO", "RejectorPSO", "ContrarianPSO", "DefeatistPSO",
    "EschewerPSO", "EscapistPSO", "AnarchicPSO", "AmnesiacPSO", "ErraticPSO",
    "WandererPSO", "DrifterPSO",
]


def test_list_algorithms_exact_registry(capsys):
    assert cli.main(["list-algorithms"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == ALGORITHM_NAMES


def test_list_problems_output(capsys):
    assert cli.main(["list-problems"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 35
    assert sum("[tuning-only]" in line for line in lines) == 3


def test_list_problems_json(capsys):
    assert cli.main(["list-problems", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload) == 35
    assert sum(entry["tuning_only"] for entry in payload) == 3


TOML_CONFIG = """
[experiment]
base_seed = 5
repetitions = 2
max_evaluations = 400
swarm_size = 10
dimensions = [5]
problems = ["Sphere", "Salomon"]

algorithms = [
    "PSO",
    { name = "SlowWanderer", variant = "wanderer", omega = 0.6, role_fraction = 0.3 },
]
"""


def run_and_analyze(tmp_path, capsys):
    config = tmp_path / "exp.toml"
    config.write_text(TOML_CONFIG)
    out = tmp_path / "results"
    rc = cli.main(["run", "--config", str(config), "--out", str(out)])
    capsys.readouterr()
    return rc, out


def test_run_writes_results_and_plan(tmp_path, capsys):
    rc, out = run_and_analyze(tmp_path, capsys)
    assert rc == 0
    assert (out / "results.csv").exists()
    assert (out / "plan.json").exists()
    plan = json.loads((out / "plan.json").read_text())
    assert [a["name"] for a in plan["plan"]["algorithms"]] == ["PSO", "SlowWanderer"]


def test_run_then_analyze_round_trip(tmp_path, capsys):
    rc, out = run_and_analyze(tmp_path, capsys)
    assert rc == 0
    report_dir = tmp_path / "report"
    rc = cli.main([
        "analyze", "--in", str(out / "results.csv"), "--out", str(report_dir),
        "--control", "PSO", "--alpha", "0.05",
    ])
    assert rc == 0
    md = (report_dir / "report.md").read_text()
    for section in ("## 1.", "## 2.", "## 3.", "## 4.", "## 5."):
        assert section in md
    payload = json.loads((report_dir / "report.json").read_text())
    assert set(payload["normalized_means"]) == {"PSO", "SlowWanderer"}
    assert payload["friedman"]["rows"] == 2


def test_run_json_config(tmp_path, capsys):
    config = tmp_path / "exp.json"
    config.write_text(json.dumps({
        "experiment": {
            "repetitions": 1, "max_evaluations": 200, "swarm_size": 10,
            "problems": [["Sphere", 5]],
        },
        "algorithms": ["PSO"],
    }))
    assert cli.main(["run", "--config", str(config), "--out", str(tmp_path / "r")]) == 0


def test_cli_overrides_without_config(tmp_path, capsys):
    rc = cli.main([
        "run", "--out", str(tmp_path / "r"), "--problems", "Sphere",
        "--dimensions", "5", "--repetitions", "1", "--budget", "200",
        "--swarm-size", "10", "--algorithms", "PSO,WandererPSO",
    ])
    assert rc == 0
    text = (tmp_path / "r" / "results.csv").read_text()
    assert text.count("\n") == 3  # header + 2 records


def test_trajectory_export_flag(tmp_path, capsys):
    rc = cli.main([
        "run", "--out", str(tmp_path / "r"), "--problems", "Sphere",
        "--dimensions", "5", "--repetitions", "1", "--budget", "200",
        "--swarm-size", "10", "--algorithms", "PSO",
        "--trajectories", str(tmp_path / "traj.csv"),
    ])
    assert rc == 0
    assert (tmp_path / "traj.csv").read_text().startswith(
        "algorithm,problem,dimension,repetition,iteration,best_fitness"
    )


class TestInvalidInputs:
    def test_unknown_problem_exits_2(self, tmp_path, capsys):
        rc = cli.main([
            "run", "--out", str(tmp_path / "r"), "--problems", "NotAProblem",
            "--dimensions", "5", "--repetitions", "1",
        ])
        assert rc == 2
        assert "NotAProblem" in capsys.readouterr().err

    def test_unknown_algorithm_key_exits_2(self, tmp_path, capsys):
        config = tmp_path / "exp.toml"
        config.write_text(
            "[experiment]\nproblems = [[\"Sphere\", 5]]\n"
            "[[algorithms]]\nvariant = \"wanderer\"\nwobble = 3\n"
        )
        rc = cli.main(["run", "--config", str(config), "--out", str(tmp_path / "r")])
        assert rc == 2
        assert "wobble" in capsys.readouterr().err

    def test_missing_problems_exits_2(self, tmp_path, capsys):
        config = tmp_path / "exp.toml"
        config.write_text("[experiment]\nrepetitions = 1\n")
        rc = cli.main(["run", "--config", str(config), "--out", str(tmp_path / "r")])
        assert rc == 2
        assert "problems" in capsys.readouterr().err

    def test_bad_alpha_exits_2(self, tmp_path, capsys):
        rc = cli.main([
            "analyze", "--in", str(tmp_path / "none.csv"), "--out",
            str(tmp_path / "rep"), "--alpha", "2.0",
        ])
        assert rc == 2

    def test_malformed_csv_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "results.csv"
        bad.write_text("algorithm,problem\nPSO,Sphere\n")
        rc = cli.main(["analyze", "--in", str(bad), "--out", str(tmp_path / "rep")])
        assert rc == 2
        err = capsys.readouterr().err
        assert "dimension" in err

    def test_missing_config_file_exits_2(self, tmp_path, capsys):
        rc = cli.main([
            "run", "--config", str(tmp_path / "nope.toml"), "--out",
            str(tmp_path / "r"),
        ])
        assert rc == 2


def test_failed_runs_exit_1(tmp_path, capsys):
    rc = cli.main([
        "run", "--out", str(tmp_path / "r"),
        "--problems", "Lennard-Jones Minimum Energy Cluster",
        "--dimensions", "7", "--repetitions", "1", "--budget", "200",
        "--swarm-size", "10", "--algorithms", "PSO",
    ])
    assert rc == 1
    assert "multiple of 3" in capsys.readouterr().err


def test_resume_flag(tmp_path, capsys):
    args = [
        "run", "--out", str(tmp_path / "r"), "--problems", "Sphere",
        "--dimensions", "5", "--budget", "200", "--swarm-size", "10",
        "--algorithms", "PSO",
    ]
    assert cli.main(args + ["--repetitions", "1"]) == 0
    assert cli.main(args + ["--repetitions", "3", "--resume"]) == 0
    out = capsys.readouterr().out
    assert "resuming: 1 records already present" in out
    text = (tmp_path / "r" / "results.csv").read_text()
    assert text.count("\n") == 4
