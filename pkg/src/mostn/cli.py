"""Command-line interface: run experiments, rebuild metrics, report, export.

Exit codes: 0 success, 1 partial or runtime failure, 2 configuration error.
The default output root comes from $MOSTN_OUT when set.
"""

import argparse
import os
import sys
from pathlib import Path

from .experiment import (
    ALGORITHMS,
    ExperimentConfig,
    export_graphs,
    rebuild,
    report_table,
    run_experiment,
)
from .problems import UF_IDS
from .trace import TraceParseError

_FORMAT_ALIASES = {"graphml": "graphml", "dot": "dot", "csv": "edgelist-csv"}


def _default_out() -> str:
    return os.environ.get("MOSTN_OUT", "mostn-out")


def _parse_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()
    return values


def _csv_list(text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mostn")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the algorithm x problem grid")
    run.add_argument("--config", help="key=value config file; flags override it")
    run.add_argument("--algos", help=f"comma list from {{{','.join(ALGORITHMS)}}}")
    run.add_argument("--problems", help="comma list from {UF1..UF10}")
    run.add_argument("--runs", type=int)
    run.add_argument("--budget", type=int)
    run.add_argument("--vectors", type=int, help="tracking vectors per run")
    run.add_argument("--precision", type=float, help="hypercube side length")
    run.add_argument("--opt-tol", type=float, help="optimal-node objective tolerance")
    run.add_argument("--seed", type=int, help="base seed; run r uses seed + r")
    run.add_argument("--out", help="output directory")

    reb = sub.add_parser("rebuild", help="rebuild graphs and report from traces")
    reb.add_argument("--out", help="experiment directory")
    reb.add_argument("--precision", type=float)
    reb.add_argument("--opt-tol", type=float)

    rep = sub.add_parser("report", help="print the report table")
    rep.add_argument("--out", help="experiment directory")

    exp = sub.add_parser("export", help="re-export merged graphs from traces")
    exp.add_argument("--out", help="experiment directory")
    exp.add_argument("--format", choices=sorted(_FORMAT_ALIASES), default="graphml")
    return parser


def _experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    settings: dict[str, str] = {}
    if args.config:
        settings = _parse_config_file(args.config)

    def pick(flag_value, key: str, cast, fallback):
        if flag_value is not None:
            return flag_value
        if key in settings:
            return cast(settings[key])
        return fallback

    return ExperimentConfig(
        out_dir=Path(pick(args.out, "out", str, _default_out())),
        algorithms=pick(_csv_list(args.algos) if args.algos else None, "algos", _csv_list, ALGORITHMS),
        problems=pick(_csv_list(args.problems) if args.problems else None, "problems", _csv_list, UF_IDS),
        runs=pick(args.runs, "runs", int, 3),
        budget=pick(args.budget, "budget", int, 30000),
        n_vectors=pick(args.vectors, "vectors", int, 5),
        precision=pick(args.precision, "precision", float, 1e-3),
        opt_tol=pick(args.opt_tol, "opt_tol", float, 1e-2),
        base_seed=pick(args.seed, "seed", int, 1),
    )


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            try:
                cfg = _experiment_config(args)
            except (ValueError, OSError) as exc:
                print(f"config error: {exc}", file=sys.stderr)
                return 2
            report = run_experiment(cfg)
            report_table(report, sys.stdout)
            if report.failures:
                for algo, pid, msg in report.failures:
                    print(f"failed: {algo} {pid}: {msg}", file=sys.stderr)
                return 1
            return 0

        out = Path(args.out if args.out else _default_out())
        if args.command == "rebuild":
            report = rebuild(out, precision=args.precision, opt_tol=args.opt_tol)
            report_table(report, sys.stdout)
            return 0
        if args.command == "report":
            path = out / "report.csv"
            if not path.exists():
                print(f"config error: no report at {path}", file=sys.stderr)
                return 2
            sys.stdout.write(path.read_text(encoding="utf-8"))
            return 0
        if args.command == "export":
            for path in export_graphs(out, _FORMAT_ALIASES[args.format]):
                print(path)
            return 0
        raise AssertionError(f"unhandled command {args.command!r}")
    except (TraceParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
