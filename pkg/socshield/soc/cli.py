"""`socsim run`: execute a stimulus script against a freshly built SoC."""

from __future__ import annotations

import argparse
from typing import List, Optional, Sequence

from dotenv import load_dotenv
from loguru import logger

from socshield import __version__
from socshield.core.errors import ConfigurationError, ScriptParseError
from socshield.utils.config import add_logging_args, add_sim_args, check_config
from socshield.utils.logging import setup_logging

from .simulator import DeliveryReport, build_soc
from .stimulus import ScriptOutcome, parse_script, run_script, write_trace_csv

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="socsim", description="Deterministic SoC bus simulator with Trojan taps."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    add_logging_args(parser)
    commands = parser.add_subparsers(dest="command", required=True)
    add_sim_args(commands.add_parser("run", help="Run a stimulus script."))
    return parser


def _summarize(outcomes: List[ScriptOutcome]) -> List[str]:
    failed = [outcome for outcome in outcomes if not outcome.ok]
    for outcome in failed:
        print(f" - line {outcome.command.line_no} {outcome.command.verb}: {outcome.error}")
    undelivered = [
        outcome
        for outcome in outcomes
        if isinstance(outcome.result, DeliveryReport) and not outcome.result.delivered
    ]
    for outcome in undelivered:
        print(f" - line {outcome.command.line_no} send: {outcome.result.status}")
    return [f"line {o.command.line_no}" for o in failed + undelivered]


def cmd_run(args: argparse.Namespace) -> int:
    try:
        commands = parse_script(args.script.read_text(encoding="utf-8"))
    except ScriptParseError as exc:
        print(f"✗ {exc}")
        return EXIT_USAGE
    except OSError as exc:
        print(f"✗ Could not read script: {exc}")
        return EXIT_USAGE
    try:
        sim = build_soc(
            cipher=args.cipher,
            radix=args.radix,
            tag_bits=args.tag_bits,
            encryption=args.encryption,
            trustzone_checks=args.trustzone_checks,
            seed=args.seed,
        )
    except (ValueError, ConfigurationError) as exc:
        print(f"✗ Invalid simulator settings: {exc}")
        return EXIT_USAGE

    outcomes = run_script(sim, commands)
    if args.trace is not None:
        try:
            write_trace_csv(sim, args.trace)
        except OSError as exc:
            print(f"✗ Could not write trace: {exc}")
            return EXIT_USAGE

    for tap in sim.taps:
        logger.info("Tap {} on {}: {} entries, {} hits", tap.name, tap.link, len(tap.log), tap.hits)
    problems = _summarize(outcomes)
    print(
        f"{len(outcomes)} commands, {sim.cycle} cycles, "
        f"{len(sim.interconnect.violations)} rejected transactions"
    )
    if problems:
        print(f"✗ {len(problems)} command(s) failed")
        return EXIT_FAILED
    print("✓ Script completed")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    check_config(args)
    setup_logging(args.log_level, args.logging_dir, args.record_log)
    return cmd_run(args)
