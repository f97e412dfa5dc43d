"""``qbench <benchmark-type> <command> ...`` entry point.

Exit codes: 0 on success, 1 for usage errors, 2 for runtime failures.
"""
from __future__ import annotations

import argparse
import sys

import yaml

from ..schemes import MalformedFragment, NoValidShots, SingularConfusion
from .angles import DivisionByZero, ParseError
from .config import SchemaError, load_backend, load_experiment, read_yaml, write_yaml
from .jobs import JobStoreError
from .report import MalformedCsv, plot, tabulate
from .workflow import MalformedResults, job_status, resolve, run_benchmark

SUPPORTED = ("cert-fourier",)
USAGE_ERROR, RUNTIME_ERROR = 1, 2

RUNTIME_ERRORS = (
    OSError, SchemaError, ParseError, DivisionByZero, JobStoreError, MalformedResults,
    MalformedCsv, MalformedFragment, NoValidShots, SingularConfusion, yaml.YAMLError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qbench", description="Certification benchmarks for qubit measurements.")
    types = parser.add_subparsers(dest="benchmark_type", required=True, parser_class=_Parser)
    cert = types.add_parser("cert-fourier", help="certification of the Fourier family")
    cmds = cert.add_subparsers(dest="command", required=True, parser_class=_Parser)

    bench = cmds.add_parser("benchmark", help="run a benchmark")
    bench.add_argument("experiment")
    bench.add_argument("backend")
    bench.add_argument("--output", help="write results here instead of standard output")

    status = cmds.add_parser("status", help="count asynchronous jobs by status")
    status.add_argument("async_results")

    res = cmds.add_parser("resolve", help="turn asynchronous results into histograms")
    res.add_argument("async_results")
    res.add_argument("output")

    tab = cmds.add_parser("tabulate", help="compute type-II error probabilities as CSV")
    tab.add_argument("results")
    tab.add_argument("output")

    fig = cmds.add_parser("plot", help="render a tabulated CSV as SVG")
    fig.add_argument("csv")
    fig.add_argument("output")
    return parser


def _dispatch(args) -> None:
    if args.command == "benchmark":
        doc = run_benchmark(load_experiment(args.experiment), load_backend(args.backend))
        text = write_yaml(doc, args.output)
        if args.output is None:
            sys.stdout.write(text)
    elif args.command == "status":
        sys.stdout.write(write_yaml(job_status(read_yaml(args.async_results))))
    elif args.command == "resolve":
        write_yaml(resolve(read_yaml(args.async_results)), args.output)
    elif args.command == "tabulate":
        tabulate(read_yaml(args.results), args.output)
    elif args.command == "plot":
        plot(args.csv, args.output)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and not argv[0].startswith("-") and argv[0] not in SUPPORTED:
        print(f"qbench: unsupported benchmark type {argv[0]!r}", file=sys.stderr)
        return USAGE_ERROR
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return USAGE_ERROR
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        _dispatch(args)
    except RUNTIME_ERRORS as exc:
        print(f"qbench: error: {exc}", file=sys.stderr)
        return RUNTIME_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())
