import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from specmate.errors import SpecmateError
from specmate.graph6 import emit_graph6
from specmate.graph_reader import load_graph
from specmate.model_report import AnalysisReport
from specmate.omega import VerdictStatus
from specmate.options import AppOptions, resolve_cap
from specmate.report_writer import dump_json, write_batch_csv, write_json
from specmate.service_analysis import analyze
from specmate.worker_batch import batch

logger = logging.getLogger(__name__)

EXIT_DGS = 0
EXIT_NON_DGS = 1
EXIT_UNDECIDED = 2
EXIT_INPUT_ERROR = 64
EXIT_OUTPUT_ERROR = 74

_EXIT_BY_STATUS = {
    VerdictStatus.DGS: EXIT_DGS,
    VerdictStatus.NON_DGS: EXIT_NON_DGS,
    VerdictStatus.UNDECIDED: EXIT_UNDECIDED,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse's own exit status 2 would collide with "Undecided"
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    graph6: str | None = None
    adj: Path | None = None
    cap: int = 1 << 16
    json: bool = False
    out: Path | None = None
    n: int = 10
    count: int = 1000
    seed: int = 0
    jobs: int = 1
    csv_path: Path | None = None
    json_path: Path | None = None
    verbose: int = 0
    options: AppOptions = field(default_factory=AppOptions)


def _version() -> str:
    try:
        return version("specmate")
    except PackageNotFoundError:
        return "unknown"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="specmate", description="Decide whether a graph is determined by its generalized spectrum.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug output")
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    for name, help_text in (("analyze", "analyze one graph"), ("mates", "print the generalized cospectral mates")):
        p = sub.add_parser(name, help=help_text)
        source = p.add_mutually_exclusive_group(required=True)
        source.add_argument("--graph6", help="graph6 string")
        source.add_argument("--adj", type=Path, help="adjacency file: n, then n rows of 0/1")
        p.add_argument("--cap", type=int, help="complexity cap (default: $SPECMATE_CAP or 65536)")
        if name == "analyze":
            p.add_argument("--json", action="store_true", help="print the report as JSON")
        else:
            p.add_argument("--out", type=Path, help="write graph6 lines to this file")

    b = sub.add_parser("batch", help="random G(n, 1/2) simulation")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--count", type=int, required=True)
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--cap", type=int)
    b.add_argument("--csv", dest="csv_path", type=Path, help="per-graph CSV output")
    b.add_argument("--json", dest="json_path", type=Path, help="JSON summary output (default: stdout)")
    b.add_argument("--jobs", type=int, help="worker processes")
    return parser


def parse_config(argv=None, environ=None) -> CliConfig:
    args = build_parser().parse_args(argv)
    options = AppOptions.load()
    try:
        cap = resolve_cap(args.cap, options, os.environ if environ is None else environ)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.subcommand == "batch":
        if args.n < 1 or args.count < 1:
            raise UsageError("batch needs --n >= 1 and --count >= 1")
        if args.seed < 0:
            raise UsageError("--seed must be non-negative")
        return CliConfig(
            subcommand="batch",
            cap=cap,
            n=args.n,
            count=args.count,
            seed=args.seed,
            jobs=args.jobs or options.batch.jobs,
            csv_path=args.csv_path,
            json_path=args.json_path,
            verbose=args.verbose,
            options=options,
        )
    return CliConfig(
        subcommand=args.subcommand,
        graph6=args.graph6,
        adj=args.adj,
        cap=cap,
        json=getattr(args, "json", False),
        out=getattr(args, "out", None),
        verbose=args.verbose,
        options=options,
    )


def _analyze_input(cfg: CliConfig) -> AnalysisReport:
    g = load_graph(graph6=cfg.graph6, adj=cfg.adj)
    solver = cfg.options.solver
    return analyze(
        g,
        cfg.cap,
        trial_limit=solver.trial_division_limit,
        rho_steps=solver.rho_max_steps,
        rho_retries=solver.rho_retries,
    )


def cmd_analyze(cfg: CliConfig) -> int:
    report = _analyze_input(cfg)
    if cfg.json:
        print(dump_json(report.to_dict()))
    else:
        print(report.render_text())
    return _EXIT_BY_STATUS[report.status]


def cmd_mates(cfg: CliConfig) -> int:
    report = _analyze_input(cfg)
    lines = [emit_graph6(m.mate) for m in report.mates]
    if report.status is VerdictStatus.UNDECIDED:
        print(f"undecided: {report.verdict.reason}", file=sys.stderr)
    if cfg.out is not None:
        try:
            cfg.out.parent.mkdir(parents=True, exist_ok=True)
            cfg.out.write_text("".join(f"{line}\n" for line in lines))
        except OSError as exc:
            print(f"specmate: cannot write output: {exc}", file=sys.stderr)
            return EXIT_OUTPUT_ERROR
    else:
        for line in lines:
            print(line)
    return _EXIT_BY_STATUS[report.status]


def cmd_batch(cfg: CliConfig) -> int:
    summary = batch(cfg.n, cfg.count, cfg.seed, cfg.cap, cfg.jobs, cfg.options.solver)
    try:
        if cfg.csv_path is not None:
            write_batch_csv(cfg.csv_path, summary.rows)
        if cfg.json_path is not None:
            write_json(cfg.json_path, summary.to_dict())
    except OSError as exc:
        print(f"specmate: cannot write output: {exc}", file=sys.stderr)
        return EXIT_OUTPUT_ERROR
    if cfg.json_path is None:
        print(dump_json(summary.to_dict()))
    return EXIT_DGS


_COMMANDS = {"analyze": cmd_analyze, "mates": cmd_mates, "batch": cmd_batch}


def main(argv=None, environ=None) -> int:
    try:
        cfg = parse_config(argv, environ)
    except UsageError as exc:
        print(f"specmate: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    level = logging.DEBUG if cfg.verbose >= 2 else logging.INFO if cfg.verbose == 1 else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        return _COMMANDS[cfg.subcommand](cfg)
    except (SpecmateError, ValueError, OSError) as exc:
        print(f"specmate: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def run():
    sys.exit(main())
