"""loguru sink setup for the command-line tools."""

from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import Optional, Union

from loguru import logger

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)


def setup_logging(
    level: str = "INFO",
    logging_dir: Optional[Union[str, Path]] = None,
    record_log: bool = False,
) -> Optional[Path]:
    """Route socshield's log records to stderr and, optionally, a rotating file."""
    logger.remove()
    logger.enable("socshield")
    logger.add(sys.stderr, level=level.upper(), format=LOG_FORMAT, colorize=None)
    if not record_log:
        return None
    directory = Path(os.path.expanduser(str(logging_dir or "./logs")))
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / "socshield.log"
    logger.add(path, level=level.upper(), rotation="10 MB", retention=5, enqueue=False)
    return path
