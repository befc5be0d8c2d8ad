"""Command-line interface: list registries, run experiment grids, analyze results.

Exit status: 0 on full success, 1 when any planned run failed, 2 for
invalid arguments or configuration (see CONFIG.md for the config schema).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from rolepso import harness, stats
from rolepso.config import ALGORITHMS, AlgorithmConfig
from rolepso.engine import active_engine
from rolepso.problems import CATALOG, is_tuning_only, list_problems


class ConfigError(Exception):
    """Invalid experiment configuration; message names the offending field."""


def load_config(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        if path.suffix.lower() == ".json":
            with open(path) as fh:
                return json.load(fh)
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


_ALGO_KEYS = {
    "name",
    "variant",
    "omega",
    "c1",
    "c2",
    "role_coefficient",
    "role_fraction",
    "lambda",
    "sigma",
}


def _algorithm_from_entry(entry, index: int) -> AlgorithmConfig:
    if isinstance(entry, str):
        if entry not in ALGORITHMS:
            raise ConfigError(
                f"algorithms[{index}]: unknown algorithm {entry!r}; "
                f"valid names: {', '.join(ALGORITHMS)}"
            )
        return AlgorithmConfig(variant=ALGORITHMS[entry], name=entry)
    if not isinstance(entry, dict):
        raise ConfigError(f"algorithms[{index}]: expected a name or a table")
    unknown = set(entry) - _ALGO_KEYS
    if unknown:
        raise ConfigError(
            f"algorithms[{index}]: unknown key(s) {sorted(unknown)}; "
            f"allowed: {sorted(_ALGO_KEYS)}"
        )
    spec = dict(entry)
    name = spec.pop("name", None)
    variant = spec.pop("variant", None)
    if variant is None and name in ALGORITHMS:
        variant = ALGORITHMS[name]
    if variant is None:
        raise ConfigError(
            f"algorithms[{index}]: needs 'variant' or a canonical 'name'"
        )
    if "lambda" in spec:
        spec["lam"] = spec.pop("lambda")
    try:
        return AlgorithmConfig(variant=variant, name=name or "", **spec)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"algorithms[{index}]: {exc}") from exc


def plan_from_config(config: dict, overrides: dict | None = None) -> harness.ExperimentPlan:
    """Build an ExperimentPlan from a parsed config, with CLI overrides applied."""
    overrides = overrides or {}
    exp = dict(config.get("experiment", {}))
    for key in ("repetitions", "base_seed", "max_evaluations", "swarm_size",
                "dimensions", "problems"):
        if overrides.get(key) is not None:
            exp[key] = overrides[key]

    problems_raw = exp.get("problems")
    if not problems_raw:
        raise ConfigError("experiment.problems: at least one problem is required")
    dimensions = exp.get("dimensions")
    pairs: list[tuple[str, int]] = []
    for i, item in enumerate(problems_raw):
        if isinstance(item, str):
            if not dimensions:
                raise ConfigError(
                    "experiment.dimensions is required when problems are plain names"
                )
            for dim in dimensions:
                pairs.append((item, int(dim)))
        elif isinstance(item, (list, tuple)) and len(item) == 2:
            pairs.append((str(item[0]), int(item[1])))
        else:
            raise ConfigError(
                f"experiment.problems[{i}]: expected a name or [name, dimension]"
            )
    for name, dim in pairs:
        if name not in CATALOG:
            raise ConfigError(
                f"experiment.problems: unknown problem {name!r}; "
                f"run 'rolepso list-problems' for valid names"
            )
        if dim < 2:
            raise ConfigError(f"experiment.problems: dimension {dim} < 2 for {name}")

    # `algorithms` may sit at the top level or inside [experiment]
    algorithms_raw = config.get("algorithms", exp.get("algorithms", list(ALGORITHMS)))
    if overrides.get("algorithms"):
        algorithms_raw = overrides["algorithms"]
    algorithms = tuple(
        _algorithm_from_entry(entry, i) for i, entry in enumerate(algorithms_raw)
    )

    try:
        return harness.ExperimentPlan(
            algorithms=algorithms,
            problems=tuple(pairs),
            repetitions=int(exp.get("repetitions", 1)),
            base_seed=int(exp.get("base_seed", 0)),
            max_evaluations=int(exp.get("max_evaluations", 25_000)),
            swarm_size=int(exp.get("swarm_size", 100)),
        )
    except ValueError as exc:
        raise ConfigError(f"experiment: {exc}") from exc


def _cmd_list_problems(args) -> int:
    names = list_problems()
    if args.json:
        print(json.dumps(
            [{"name": n, "tuning_only": is_tuning_only(n)} for n in names], indent=2
        ))
    else:
        for n in names:
            print(f"{n}{'  [tuning-only]' if is_tuning_only(n) else ''}")
    return 0


def _cmd_list_algorithms(args) -> int:
    if args.json:
        print(json.dumps(
            [{"name": n, "role": r} for n, r in ALGORITHMS.items()], indent=2
        ))
    else:
        for name in ALGORITHMS:
            print(name)
    return 0


def _split_csv(value: str | None) -> list[str] | None:
    if value is None:
        return None
    return [v.strip() for v in value.split(",") if v.strip()]


def _cmd_run(args) -> int:
    overrides = {
        "repetitions": args.repetitions,
        "base_seed": args.base_seed,
        "max_evaluations": args.budget,
        "swarm_size": args.swarm_size,
        "dimensions": [int(d) for d in _split_csv(args.dimensions) or []] or None,
        "problems": _split_csv(args.problems),
        "algorithms": _split_csv(args.algorithms),
    }
    config = load_config(args.config) if args.config else {}
    plan = plan_from_config(config, overrides)

    resume_records = None
    out_dir = Path(args.out)
    if args.resume and (out_dir / "results.csv").exists():
        resume_records = harness.read_results(out_dir).records
        print(f"resuming: {len(resume_records)} records already present")

    total = len(plan.algorithms) * len(plan.problems) * plan.repetitions
    print(
        f"running {total} runs "
        f"({len(plan.algorithms)} algorithms x {len(plan.problems)} problem "
        f"instances x {plan.repetitions} repetitions) on the "
        f"{active_engine()} engine"
    )
    done = 0

    def progress(record):
        nonlocal done
        done += 1
        if args.verbose:
            status = "FAILED" if record.failed else f"{record.final_best_fitness:.6g}"
            print(f"[{done}/{total}] {record.algorithm} / {record.problem} "
                  f"d={record.dimension} rep={record.repetition}: {status}")

    results = harness.execute(
        plan, parallelism=args.parallelism, resume_records=resume_records,
        progress=progress,
    )
    csv_path, plan_path = harness.write_results(results, out_dir)
    print(f"wrote {csv_path} and {plan_path}")
    if args.trajectories:
        traj_path = harness.write_trajectories(results, args.trajectories)
        print(f"wrote {traj_path}")
    failures = results.failures
    if failures:
        print(f"{len(failures)} run(s) failed:", file=sys.stderr)
        for r in failures:
            print(
                f"  {r.algorithm} / {r.problem} d={r.dimension} "
                f"rep={r.repetition}: {r.error}",
                file=sys.stderr,
            )
        return 1
    return 0


def _cmd_analyze(args) -> int:
    if not 0.0 < args.alpha < 1.0:
        raise ConfigError(f"--alpha must lie in (0, 1), got {args.alpha}")
    try:
        results = harness.read_results(args.input)
    except FileNotFoundError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        report = stats.analyze(results.records, control=args.control, alpha=args.alpha)
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from exc
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    md_path = out_dir / "report.md"
    json_path = out_dir / "report.json"
    md_path.write_text(stats.render_markdown(report))
    json_path.write_text(json.dumps(stats.report_to_dict(report), indent=2))
    print(f"wrote {md_path} and {json_path}")
    if report.failures:
        print(f"{len(report.failures)} failed run(s) noted in the report",
              file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rolepso",
        description="Role-based PSO variants: benchmark runs and analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list-problems", help="print the benchmark catalog")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_list_problems)

    p = sub.add_parser("list-algorithms", help="print the algorithm registry")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_list_algorithms)

    p = sub.add_parser("run", help="execute an experiment grid")
    p.add_argument("--config", help="TOML or JSON experiment config")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--repetitions", type=int)
    p.add_argument("--budget", type=int, help="max function evaluations per run")
    p.add_argument("--swarm-size", type=int, dest="swarm_size")
    p.add_argument("--base-seed", type=int, dest="base_seed")
    p.add_argument("--dimensions", help="comma-separated, e.g. 10,100")
    p.add_argument("--problems", help="comma-separated problem names")
    p.add_argument("--algorithms", help="comma-separated algorithm names")
    p.add_argument("--resume", action="store_true",
                   help="skip runs already present in the output")
    p.add_argument("--trajectories", help="also export trajectories to this CSV")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("analyze", help="analyze a results CSV")
    p.add_argument("--in", dest="input", required=True, help="results CSV or directory")
    p.add_argument("--out", required=True, help="report output directory")
    p.add_argument("--control", default="PSO")
    p.add_argument("--alpha", type=float, default=0.05)
    p.set_defaults(func=_cmd_analyze)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, harness.ResultsFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
