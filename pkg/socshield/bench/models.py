"""Benchmark result record."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping

from socshield.core.models import CipherKind


@dataclass(frozen=True)
class BenchResult:
    cipher: CipherKind
    radix: int
    init_steps: int
    keystream_steps: int
    payload_size: int
    repetitions: int
    median_seconds: float
    bytes_per_second: float
    steps_per_byte: float
    keystream_steps_per_byte: float

    def to_row(self) -> Dict[str, object]:
        return {
            "cipher": self.cipher.value,
            "radix": self.radix,
            "init_steps": self.init_steps,
            "keystream_steps": self.keystream_steps,
            "payload_size": self.payload_size,
            "repetitions": self.repetitions,
            "median_seconds": self.median_seconds,
            "bytes_per_second": self.bytes_per_second,
            "steps_per_byte": self.steps_per_byte,
            "keystream_steps_per_byte": self.keystream_steps_per_byte,
        }

    @classmethod
    def from_row(cls, row: Mapping[str, object]) -> "BenchResult":
        return cls(
            cipher=CipherKind(str(row["cipher"])),
            radix=int(row["radix"]),
            init_steps=int(row["init_steps"]),
            keystream_steps=int(row["keystream_steps"]),
            payload_size=int(row["payload_size"]),
            repetitions=int(row["repetitions"]),
            median_seconds=float(row["median_seconds"]),
            bytes_per_second=float(row["bytes_per_second"]),
            steps_per_byte=float(row["steps_per_byte"]),
            keystream_steps_per_byte=float(row["keystream_steps_per_byte"]),
        )
