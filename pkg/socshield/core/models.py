"""
Core data models shared by the cipher, channel and SoC layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Dict, Mapping, Optional, Union

from socshield.constants import (
    GRAIN_IV_BITS,
    GRAIN_KEY_BITS,
    GRAIN_STATE_BITS,
    RADIX_SET,
    TRIVIUM_IV_BITS,
    TRIVIUM_KEY_BITS,
    TRIVIUM_STATE_BITS,
)
from socshield.core.errors import ParameterSizeError


class CipherKind(str, Enum):
    TRIVIUM = "trivium"
    GRAIN128A = "grain128a"
    GRAIN128A_AUTH = "grain128a-auth"

    @property
    def authenticated(self) -> bool:
        return self is CipherKind.GRAIN128A_AUTH

    @property
    def family(self) -> "CipherKind":
        return CipherKind.GRAIN128A if self is CipherKind.GRAIN128A_AUTH else self


class Radix(IntEnum):
    """Bits produced per hardware step."""

    R1 = 1
    R8 = 8
    R16 = 16
    R32 = 32


RadixLike = Union[Radix, int]


def as_radix(value: RadixLike) -> Radix:
    try:
        return Radix(int(value))
    except (TypeError, ValueError):
        raise ParameterSizeError(
            f"radix {value!r} not in {list(RADIX_SET)}"
        ) from None


class Phase(str, Enum):
    LOADED = "loaded"
    INITIALIZING = "initializing"
    STREAMING = "streaming"
    FINALIZED = "finalized"


class Direction(IntEnum):
    TA_TO_IP = 0
    IP_TO_TA = 1

    @property
    def reverse(self) -> "Direction":
        return Direction(1 - int(self))


class World(str, Enum):
    SECURE = "secure"
    NON_SECURE = "non_secure"


class TxnKind(str, Enum):
    READ = "read"
    WRITE = "write"


@dataclass(frozen=True)
class CipherParams:
    key_bits: int
    iv_bits: int
    state_bits: int

    @property
    def key_bytes(self) -> int:
        return self.key_bits // 8

    @property
    def iv_bytes(self) -> int:
        return self.iv_bits // 8

    @classmethod
    def for_kind(cls, kind: CipherKind) -> "CipherParams":
        if kind is CipherKind.TRIVIUM:
            return cls(TRIVIUM_KEY_BITS, TRIVIUM_IV_BITS, TRIVIUM_STATE_BITS)
        return cls(GRAIN_KEY_BITS, GRAIN_IV_BITS, GRAIN_STATE_BITS)


@dataclass(frozen=True)
class KeystreamChunk:
    """One step of keystream output; bit c of `value` is the c-th bit produced."""

    value: int
    width: int
    producer: CipherKind
    radix: Radix

    def bits(self) -> list[int]:
        return [(self.value >> c) & 1 for c in range(self.width)]


@dataclass(frozen=True)
class CipherStats:
    """Step accounting of one cipher instance, copied out after a seal/open."""

    init_steps: int = 0
    keystream_steps: int = 0
    preload_steps: int = 0
    clocks: int = 0

    @property
    def total_steps(self) -> int:
        return self.init_steps + self.preload_steps + self.keystream_steps


@dataclass(frozen=True)
class BusTransaction:
    """A single-beat transfer on the modeled interconnect."""

    kind: TxnKind
    address: int
    originator: str
    ns_attr: bool = False
    data: int = 0
    strobe: int = 0xF

    @classmethod
    def from_payload(cls, payload: Mapping[str, object]) -> "BusTransaction":
        return cls(
            kind=TxnKind(payload.get("kind", "read")),
            address=int(payload["address"]),
            originator=str(payload.get("originator")),
            ns_attr=bool(payload.get("ns_attr", False)),
            data=int(payload.get("data", 0) or 0),
            strobe=int(payload.get("strobe", 0xF)),
        )

    def to_payload(self) -> Dict[str, object]:
        return {
            "kind": self.kind.value,
            "address": self.address,
            "originator": self.originator,
            "ns_attr": self.ns_attr,
            "data": self.data,
            "strobe": self.strobe,
        }


@dataclass(frozen=True)
class TraceRecord:
    cycle: int
    link: str
    txn: BusTransaction
    response: str

    def to_row(self) -> Dict[str, object]:
        return {
            "cycle": self.cycle,
            "link": self.link,
            "address": f"0x{self.txn.address:08x}",
            "data": f"0x{self.txn.data:08x}",
            "ns_attr": int(self.txn.ns_attr),
            "originator": self.txn.originator,
        }
