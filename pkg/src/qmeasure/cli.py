"""Command line interface.

Exit codes: 0 every verdict passed, 1 some verdict failed, 2 scenario
parse/validation error, 3 internal numerical error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParseError, QMeasureError, ValidationError
from .pipeline import VerificationReport, report_to_dict, report_to_json, report_to_text, run_pipeline
from .scenario import generate_random_instance, load_scenario

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    parser.add_argument("--tolerance", type=float, default=None, help="override every verdict tolerance")
    parser.add_argument("--out", default=None, help="write the report to this path instead of stdout")
    parser.add_argument(
        "--include-timing",
        action="store_true",
        help="include wall-clock duration in JSON output (off keeps it byte-stable)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmeasure",
        description="Verify repeatable-measurement identities for a scenario or a random campaign.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run one scenario file and emit its report")
    run_parser.add_argument("scenario", help="path to a scenario JSON document")
    _add_common(run_parser)

    batch_parser = sub.add_parser("batch", help="run a seeded random campaign")
    batch_parser.add_argument("--seeds", default="0..19", help="inclusive seed range A..B (default 0..19)")
    batch_parser.add_argument("--d1-max", type=int, default=4, help="largest object dimension (default 4)")
    batch_parser.add_argument("--outcomes-max", type=int, default=3, help="largest outcome count (default 3)")
    _add_common(batch_parser)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _exit_code(report: VerificationReport) -> int:
    if report.error is not None:
        return EXIT_NUMERICAL
    return EXIT_PASS if report.overall_pass else EXIT_FAIL


def _run_command(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except OSError as exc:
        print(f"cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ParseError, ValidationError) as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return EXIT_INVALID

    if args.tolerance is not None:
        scenario = _with_tolerance(scenario, args.tolerance)
    report = run_pipeline(scenario)
    if args.format == "json":
        _emit(report_to_json(report, include_timing=args.include_timing), args.out)
    else:
        _emit(report_to_text(report, verbosity=scenario.verbosity), args.out)
    return _exit_code(report)


def _with_tolerance(scenario, tolerance: float):
    from dataclasses import replace

    return replace(scenario, tolerance=tolerance)


def _parse_seed_range(text: str) -> range:
    try:
        first, last = text.split("..")
        start, stop = int(first), int(last)
    except ValueError as exc:
        raise ValueError(f"--seeds expects A..B, got {text!r}") from exc
    if stop < start:
        raise ValueError(f"--seeds range {text!r} is empty")
    return range(start, stop + 1)


def _batch_command(args: argparse.Namespace) -> int:
    try:
        seeds = _parse_seed_range(args.seeds)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID

    reports: list[tuple[int, VerificationReport]] = []
    try:
        for seed in seeds:
            scenario = generate_random_instance(seed, args.d1_max, args.outcomes_max)
            if args.tolerance is not None:
                scenario = _with_tolerance(scenario, args.tolerance)
            reports.append((seed, run_pipeline(scenario)))
    except ValueError as exc:  # bad campaign bounds
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except QMeasureError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    failed = [seed for seed, report in reports if not report.overall_pass]
    errored = [seed for seed, report in reports if report.error is not None]

    if args.format == "json":
        doc = {
            "campaign": {
                "seeds": [seeds.start, seeds.stop - 1],
                "d1_max": args.d1_max,
                "outcomes_max": args.outcomes_max,
                "total": len(reports),
                "failed_seeds": failed,
                "errored_seeds": errored,
            },
            "results": [
                {"seed": seed, **report_to_dict(report, include_timing=args.include_timing)}
                for seed, report in reports
            ],
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = []
        for seed, report in reports:
            worst = max((v.deviation for v in report.verdicts), default=float("nan"))
            status = "ERROR" if report.error else ("PASS" if report.overall_pass else "FAIL")
            lines.append(f"seed={seed:<6d} status={status:<5s} worst_deviation={worst:.3e}")
            if report.error:
                lines.append(f"    {report.error}")
        lines.append(
            f"campaign: {len(reports)} scenarios, {len(reports) - len(failed)} passed, "
            f"{len(failed)} failed, {len(errored)} errored"
        )
        _emit("\n".join(lines) + "\n", args.out)

    if errored:
        return EXIT_NUMERICAL
    return EXIT_PASS if not failed else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _run_command(args)
    return _batch_command(args)


if __name__ == "__main__":
    raise SystemExit(main())
