"""CSV output of benchmark results with a fixed column set."""

from __future__ import annotations

from pathlib import Path
from typing import List, Sequence, Union

import pandas as pd
from loguru import logger

from socshield.core.errors import ResultsFormatError

from .models import BenchResult

RESULT_COLUMNS = (
    "cipher",
    "radix",
    "init_steps",
    "keystream_steps",
    "payload_size",
    "repetitions",
    "median_seconds",
    "bytes_per_second",
    "steps_per_byte",
    "keystream_steps_per_byte",
)


def results_frame(results: Sequence[BenchResult]) -> pd.DataFrame:
    return pd.DataFrame([result.to_row() for result in results], columns=list(RESULT_COLUMNS))


def write_results_csv(results: Sequence[BenchResult], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    results_frame(results).to_csv(path, index=False)
    logger.info("Wrote {} result rows to {}", len(results), path)
    return path


def read_results_csv(path: Union[str, Path]) -> List[BenchResult]:
    frame = pd.read_csv(path, float_precision="round_trip")
    missing = [column for column in RESULT_COLUMNS if column not in frame.columns]
    if missing:
        raise ResultsFormatError(f"{path}: missing column(s) {', '.join(missing)}")
    try:
        return [BenchResult.from_row(row) for row in frame.to_dict(orient="records")]
    except (KeyError, ValueError) as exc:
        raise ResultsFormatError(f"{path}: {exc}") from None
