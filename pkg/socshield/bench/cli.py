"""
`bench` command line: run | kat | compare.

Exit status is 0 on success, 1 when a check fails (step counts, known-answer
vectors, Trivium-vs-Grain ordering) and 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
from typing import List, Optional, Sequence

from dotenv import load_dotenv
from loguru import logger

from socshield import __version__
from socshield.constants import GRAIN_INIT_CLOCKS, TRIVIUM_INIT_CLOCKS
from socshield.core.errors import CoverageError, KatParseError, ResultsFormatError
from socshield.core.models import CipherKind
from socshield.utils.config import (
    add_bench_compare_args,
    add_bench_kat_args,
    add_bench_run_args,
    add_logging_args,
    check_config,
)
from socshield.utils.logging import setup_logging

from .compare import check_radix_scaling, compare_report
from .kat import kat_check
from .models import BenchResult
from .reporting import read_results_csv
from .runner import BenchConfig, run_bench

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_INIT_CLOCKS = {
    CipherKind.TRIVIUM: TRIVIUM_INIT_CLOCKS,
    CipherKind.GRAIN128A: GRAIN_INIT_CLOCKS,
    CipherKind.GRAIN128A_AUTH: GRAIN_INIT_CLOCKS,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bench",
        description="Stream cipher benchmark, known-answer checks and throughput comparison.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    add_logging_args(parser)
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Benchmark (cipher, radix) cells.")
    add_bench_run_args(run)
    kat = commands.add_parser("kat", help="Check keystreams against known-answer vectors.")
    add_bench_kat_args(kat)
    compare = commands.add_parser("compare", help="Compare Trivium and Grain-128a throughput.")
    add_bench_compare_args(compare)
    return parser


def _parse_radices(text: str) -> List[int]:
    return [int(token) for token in text.split(",") if token.strip()]


def _config_from_args(args: argparse.Namespace) -> BenchConfig:
    if args.cipher == "both":
        ciphers = [CipherKind.TRIVIUM, CipherKind.GRAIN128A]
    else:
        ciphers = [CipherKind(args.cipher)]
    return BenchConfig(
        ciphers=ciphers,
        radices=_parse_radices(args.radix),
        payload_size=args.size,
        repetitions=args.reps,
        output=args.out,
        parallel=args.parallel,
        seed=args.seed,
    )


def expected_init_steps(cipher: CipherKind, radix: int) -> int:
    return _INIT_CLOCKS[cipher] // radix


def _print_results(results: Sequence[BenchResult]) -> None:
    print(f"{'cipher':<16}{'radix':>6}{'init':>8}{'steps/B':>10}{'B/s':>16}")
    for result in results:
        print(
            f"{result.cipher.value:<16}{result.radix:>6}{result.init_steps:>8}"
            f"{result.steps_per_byte:>10.3f}{result.bytes_per_second:>16.0f}"
        )


def cmd_run(args: argparse.Namespace) -> int:
    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(f"✗ Invalid benchmark configuration: {exc}")
        return EXIT_USAGE
    try:
        results = run_bench(config)
    except OSError as exc:
        print(f"✗ Could not write results: {exc}")
        return EXIT_USAGE
    _print_results(results)

    mismatched = [
        result
        for result in results
        if result.init_steps != expected_init_steps(result.cipher, result.radix)
    ]
    for violation in check_radix_scaling(results):
        logger.warning(
            "{} throughput dropped from radix {} to {}: {:.0f} -> {:.0f} B/s",
            violation.cipher.value,
            violation.lower_radix,
            violation.higher_radix,
            violation.lower_bps,
            violation.higher_bps,
        )
    if mismatched:
        for result in mismatched:
            print(
                f"✗ {result.cipher.value} radix {result.radix}: init_steps {result.init_steps}, "
                f"expected {expected_init_steps(result.cipher, result.radix)}"
            )
        return EXIT_FAILED
    if config.output is not None:
        print(f"✓ Wrote {len(results)} rows to {config.output}")
    else:
        print(f"✓ Benchmarked {len(results)} cells")
    return EXIT_OK


def cmd_kat(args: argparse.Namespace) -> int:
    try:
        report = kat_check(args.file)
    except KatParseError as exc:
        print(f"✗ {exc}")
        return EXIT_USAGE
    except OSError as exc:
        print(f"✗ Could not read vectors: {exc}")
        return EXIT_USAGE
    if report.failures:
        print(f"✗ {len(report.failures)} of {len(report.results)} vectors failed:")
        for failure in report.failures:
            vector = failure.vector
            print(f" - line {vector.line_no}: {vector.cipher.value} radix {int(vector.radix)}")
        return EXIT_FAILED
    print(f"✓ {len(report.results)} vectors passed ({report.path})")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    try:
        results = read_results_csv(args.input)
        summary = compare_report(results)
    except (CoverageError, ResultsFormatError) as exc:
        print(f"✗ {exc}")
        return EXIT_USAGE
    except OSError as exc:
        print(f"✗ Could not read results: {exc}")
        return EXIT_USAGE

    print(summary.to_frame().to_string(index=False))
    for violation in check_radix_scaling(results, args.tolerance):
        logger.warning(
            "{} throughput is not monotonic between radix {} and {}",
            violation.cipher.value,
            violation.lower_radix,
            violation.higher_radix,
        )
    if not summary.trivium_faster_everywhere:
        slower = [row.radix for row in summary.rows if not row.trivium_not_slower]
        print(f"✗ Grain-128a outran Trivium at radix {', '.join(map(str, slower))}")
        return EXIT_FAILED
    print("✓ Trivium is at least as fast as Grain-128a at every radix")
    return EXIT_OK


_COMMANDS = {"run": cmd_run, "kat": cmd_kat, "compare": cmd_compare}


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    check_config(args)
    setup_logging(args.log_level, args.logging_dir, args.record_log)
    return _COMMANDS[args.command](args)
