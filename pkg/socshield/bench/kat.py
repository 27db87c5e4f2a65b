"""Known-answer conformance run over a vector file."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

from loguru import logger

from socshield.cipher.kat import KatResult, evaluate_vector, load_kat_file
from socshield.utils.config import default_kat_file


@dataclass(frozen=True)
class KatReport:
    path: Path
    results: List[KatResult]

    @property
    def failures(self) -> List[KatResult]:
        return [result for result in self.results if not result.passed]

    @property
    def passed(self) -> bool:
        return not self.failures


def kat_check(path: Optional[Union[str, Path]] = None) -> KatReport:
    path = Path(path) if path is not None else default_kat_file()
    vectors = load_kat_file(path)
    if not vectors:
        logger.warning("{} contains no vectors", path)
    results = [evaluate_vector(vector) for vector in vectors]
    for result in results:
        if result.passed:
            logger.debug("KAT line {} passed", result.vector.line_no)
        else:
            logger.error("KAT line {} failed: {}", result.vector.line_no, result.to_payload())
    return KatReport(path=path, results=results)
