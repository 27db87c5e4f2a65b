"""Trivium-vs-Grain ordering and radix scaling checks over benchmark results."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Sequence

import pandas as pd

from socshield.core.errors import CoverageError
from socshield.core.models import CipherKind

from .models import BenchResult

TIE = "tie"


@dataclass(frozen=True)
class RadixComparison:
    radix: int
    trivium_bps: float
    grain_bps: float
    ratio: float
    ordering: str

    @property
    def trivium_not_slower(self) -> bool:
        return self.ordering in (CipherKind.TRIVIUM.value, TIE)


@dataclass(frozen=True)
class ComparisonSummary:
    rows: List[RadixComparison]

    @property
    def trivium_faster_everywhere(self) -> bool:
        return all(row.trivium_not_slower for row in self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "radix": row.radix,
                    "trivium_bps": row.trivium_bps,
                    "grain128a_bps": row.grain_bps,
                    "ratio": row.ratio,
                    "ordering": row.ordering,
                }
                for row in self.rows
            ]
        )


@dataclass(frozen=True)
class ScalingViolation:
    cipher: CipherKind
    lower_radix: int
    higher_radix: int
    lower_bps: float
    higher_bps: float


def _by_radix(results: Sequence[BenchResult], cipher: CipherKind) -> Dict[int, BenchResult]:
    cells: Dict[int, BenchResult] = {}
    for result in results:
        if result.cipher is not cipher:
            continue
        if result.radix in cells:
            raise CoverageError(f"duplicate result for {cipher.value} radix {result.radix}")
        cells[result.radix] = result
    return cells


def compare_report(results: Sequence[BenchResult], rel_tol: float = 1e-9) -> ComparisonSummary:
    trivium = _by_radix(results, CipherKind.TRIVIUM)
    grain = _by_radix(results, CipherKind.GRAIN128A)
    if not trivium or not grain:
        raise CoverageError("results must include both trivium and grain128a")
    if set(trivium) != set(grain):
        raise CoverageError(
            f"radix coverage differs: trivium {sorted(trivium)} vs grain128a {sorted(grain)}"
        )
    rows = []
    for radix in sorted(trivium):
        t_bps = trivium[radix].bytes_per_second
        g_bps = grain[radix].bytes_per_second
        if math.isclose(t_bps, g_bps, rel_tol=rel_tol):
            ordering = TIE
        elif t_bps > g_bps:
            ordering = CipherKind.TRIVIUM.value
        else:
            ordering = CipherKind.GRAIN128A.value
        ratio = t_bps / g_bps if g_bps else math.inf
        rows.append(RadixComparison(radix, t_bps, g_bps, ratio, ordering))
    return ComparisonSummary(rows)


def check_radix_scaling(
    results: Sequence[BenchResult], tolerance: float = 0.05
) -> List[ScalingViolation]:
    """Pairs of adjacent radices where throughput drops by more than `tolerance`."""
    grouped: Dict[CipherKind, List[BenchResult]] = defaultdict(list)
    for result in results:
        grouped[result.cipher].append(result)
    violations = []
    for cipher, cells in grouped.items():
        cells = sorted(cells, key=lambda item: item.radix)
        for lower, higher in zip(cells, cells[1:]):
            if higher.bytes_per_second < lower.bytes_per_second * (1 - tolerance):
                violations.append(
                    ScalingViolation(
                        cipher,
                        lower.radix,
                        higher.radix,
                        lower.bytes_per_second,
                        higher.bytes_per_second,
                    )
                )
    return violations
