"""
Throughput benchmark over (cipher, radix) cells.

Each cell encrypts the same random payload `repetitions` times with a fresh
(key, IV) load and full warm-up per repetition, and reports the median wall time
next to the exact step counts.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field, field_validator

from socshield.cipher import new_cipher
from socshield.constants import (
    DEFAULT_PAYLOAD_BYTES,
    DEFAULT_REPETITIONS,
    MIN_REPETITIONS,
    RADIX_SET,
)
from socshield.core.models import CipherKind, CipherParams

from .models import BenchResult
from .reporting import write_results_csv

Cell = Tuple[CipherKind, int]

_CIPHER_ORDER = list(CipherKind)


class BenchConfig(BaseModel):
    ciphers: List[CipherKind] = Field(
        default_factory=lambda: [CipherKind.TRIVIUM, CipherKind.GRAIN128A]
    )
    radices: List[int] = Field(default_factory=lambda: list(RADIX_SET))
    payload_size: int = Field(default=DEFAULT_PAYLOAD_BYTES, ge=1)
    repetitions: int = Field(default=DEFAULT_REPETITIONS, ge=MIN_REPETITIONS)
    output: Optional[Path] = None
    parallel: bool = False
    seed: int = 0

    @field_validator("ciphers")
    @classmethod
    def _ciphers_present(cls, value: List[CipherKind]) -> List[CipherKind]:
        if not value:
            raise ValueError("at least one cipher is required")
        return list(dict.fromkeys(value))

    @field_validator("radices")
    @classmethod
    def _radices_supported(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("at least one radix is required")
        unknown = [r for r in value if r not in RADIX_SET]
        if unknown:
            raise ValueError(f"unsupported radix {unknown}; choose from {list(RADIX_SET)}")
        return sorted(set(value))

    @property
    def cells(self) -> List[Cell]:
        return [(cipher, radix) for cipher in self.ciphers for radix in self.radices]


def run_cell(
    cipher: CipherKind, radix: int, payload_size: int, repetitions: int, seed: int = 0
) -> BenchResult:
    """Benchmark one (cipher, radix) cell. Self-contained so it can run in a worker."""
    cipher = CipherKind(cipher)
    rng = np.random.default_rng([seed, _CIPHER_ORDER.index(cipher), radix])
    params = CipherParams.for_kind(cipher)
    payload = rng.integers(0, 256, size=payload_size, dtype=np.uint8).tobytes()
    key = rng.integers(0, 256, size=params.key_bytes, dtype=np.uint8).tobytes()

    timings = []
    instance = None
    for _ in range(repetitions):
        iv = rng.integers(0, 256, size=params.iv_bytes, dtype=np.uint8).tobytes()
        started = time.perf_counter()
        instance = new_cipher(cipher, key, iv)
        instance.initialize(radix)
        instance.apply(payload, radix)
        if cipher.authenticated:
            instance.finalize_mac(payload)
        timings.append(time.perf_counter() - started)

    median = float(np.median(timings))
    stats = instance.stats()
    result = BenchResult(
        cipher=cipher,
        radix=radix,
        init_steps=stats.init_steps,
        keystream_steps=stats.keystream_steps,
        payload_size=payload_size,
        repetitions=repetitions,
        median_seconds=median,
        bytes_per_second=payload_size / median if median > 0 else float("inf"),
        steps_per_byte=stats.total_steps / payload_size,
        keystream_steps_per_byte=stats.keystream_steps / payload_size,
    )
    logger.info(
        "{} r={}: init_steps={} median={:.4f}s ({:.0f} B/s)",
        cipher.value,
        radix,
        result.init_steps,
        median,
        result.bytes_per_second,
    )
    return result


def run_bench(config: BenchConfig) -> List[BenchResult]:
    cells = config.cells
    logger.info(
        "Benchmarking {} cells, {} bytes x {} repetitions{}",
        len(cells),
        config.payload_size,
        config.repetitions,
        " in parallel" if config.parallel else "",
    )
    args = [
        (cipher, radix, config.payload_size, config.repetitions, config.seed)
        for cipher, radix in cells
    ]
    if config.parallel and len(cells) > 1:
        workers = min(len(cells), os.cpu_count() or 1)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_cell, *zip(*args)))
    else:
        results = [run_cell(*cell_args) for cell_args in args]

    if config.output is not None:
        write_results_csv(results, config.output)
    return results
