"""Command line: ``skewcat check FILE`` and ``skewcat demo NAME``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..report import SamplingConfig
from .demos import DEMOS
from .dsl import DSLError, parse
from .runner import report_json, report_text, run

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _sampling_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="seed for all sampling (default 0)")
    p.add_argument("--samples", type=int, default=50, help="sampled objects per large category (default 50)")
    p.add_argument("--fibre-bound", type=int, default=3, help="largest sampled fibre (default 3)")
    p.add_argument("--json", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
    p.add_argument("--timing", action="store_true", help="record seconds per directive")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewcat", description="Build and verify skew monoidal structures.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="run the directives of a document")
    check.add_argument("file", help="document path ('-' for stdin)")
    _sampling_args(check)
    demo = sub.add_parser("demo", help="run a built-in document")
    demo.add_argument("name", choices=sorted(DEMOS))
    demo.add_argument("--print-document", action="store_true", help="print the document instead of running it")
    _sampling_args(demo)
    return parser


def _execute(text: str, args: argparse.Namespace) -> int:
    if args.samples < 1 or args.fibre_bound < 0:
        print("error: --samples must be positive and --fibre-bound non-negative", file=sys.stderr)
        return EXIT_INPUT
    config = SamplingConfig(fibre_bound=args.fibre_bound, samples=args.samples, seed=args.seed)
    try:
        report = run(parse(text), config, timing=args.timing)
    except DSLError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json == "-":
        sys.stdout.write(report_json(report))
    else:
        sys.stdout.write(report_text(report))
        if args.json:
            Path(args.json).write_text(report_json(report), encoding="utf-8")
    return EXIT_PASS if report["status"] == "pass" else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "demo":
        if args.print_document:
            sys.stdout.write(DEMOS[args.name])
            return EXIT_PASS
        return _execute(DEMOS[args.name], args)
    try:
        text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return _execute(text, args)


if __name__ == "__main__":
    sys.exit(main())
