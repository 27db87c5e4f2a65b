"""argparse / environment configuration helpers for the command-line tools."""

from __future__ import annotations

import argparse
import os
from pathlib import Path
from typing import Optional

from socshield.constants import (
    BUNDLED_KAT_FILE,
    DEFAULT_PAYLOAD_BYTES,
    DEFAULT_REPETITIONS,
)

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR")


def env_flag(name: str, default: bool = False) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


def env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    try:
        return int(value) if value is not None else default
    except ValueError:
        return default


def default_kat_file() -> Path:
    return Path(os.getenv("SOCSHIELD_KAT_FILE") or BUNDLED_KAT_FILE)


def add_logging_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--logging.level",
        dest="log_level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=os.getenv("SOCSHIELD_LOG_LEVEL", "INFO").upper(),
        help="Minimum log level written to stderr.",
    )
    parser.add_argument(
        "--logging.logging_dir",
        dest="logging_dir",
        type=str,
        default=os.getenv("SOCSHIELD_LOG_DIR", "./logs"),
        help="Directory for the rotating log file.",
    )
    parser.add_argument(
        "--logging.record_log",
        dest="record_log",
        action="store_true",
        default=env_flag("SOCSHIELD_RECORD_LOG"),
        help="Also write logs to <logging_dir>/socshield.log.",
    )


def add_bench_run_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--cipher",
        choices=("trivium", "grain128a", "both"),
        default="both",
        help="Cipher(s) to benchmark.",
    )
    parser.add_argument(
        "--radix",
        type=str,
        default="1,8,16,32",
        help="Comma-separated output radices (bits per step).",
    )
    parser.add_argument(
        "--size",
        type=int,
        default=DEFAULT_PAYLOAD_BYTES,
        help="Payload size in bytes.",
    )
    parser.add_argument(
        "--reps",
        type=int,
        default=DEFAULT_REPETITIONS,
        help="Repetitions per cell; the median is reported.",
    )
    parser.add_argument("--out", type=Path, default=None, help="CSV output path.")
    parser.add_argument(
        "--parallel",
        action="store_true",
        help="Run (cipher, radix) cells in a process pool.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=env_int("SOCSHIELD_SEED", 0),
        help="Seed for payloads, keys and IVs.",
    )


def add_bench_kat_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--file",
        type=Path,
        default=None,
        help="Known-answer vector file (defaults to the bundled vectors).",
    )


def add_bench_compare_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--in", dest="input", type=Path, required=True, help="Results CSV.")
    parser.add_argument(
        "--tolerance",
        type=float,
        default=0.05,
        help="Relative noise allowed in the radix-scaling check.",
    )


def add_sim_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--script", type=Path, required=True, help="Stimulus script.")
    parser.add_argument("--trace", type=Path, default=None, help="Trace CSV output path.")
    parser.add_argument(
        "--cipher",
        choices=("trivium", "grain128a", "grain128a-auth"),
        default="trivium",
        help="Initial session cipher.",
    )
    parser.add_argument("--radix", type=int, default=32, help="Initial session radix.")
    parser.add_argument("--tag-bits", type=int, default=None, help="Tag length for grain128a-auth.")
    parser.add_argument(
        "--no-encryption",
        dest="encryption",
        action="store_false",
        help="Start with the plaintext baseline channel.",
    )
    parser.add_argument(
        "--no-trustzone",
        dest="trustzone_checks",
        action="store_false",
        help="Disable the secure slaves' TrustZone checks.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=env_int("SOCSHIELD_SEED", 0),
        help="Simulator seed.",
    )


def check_config(args: argparse.Namespace) -> Optional[Path]:
    """Create the logging directory when file logging is requested."""
    if not getattr(args, "record_log", False):
        return None
    full_path = Path(os.path.expanduser(args.logging_dir))
    full_path.mkdir(parents=True, exist_ok=True)
    return full_path
