"""
Hardware-Trojan taps attachable to interconnect links, and leakage analysis.

Three behaviours are modeled:

- eavesdrop_fifo: a passive FIFO that copies every transaction crossing its link.
- ns_bit_flip:    rewrites the non-secure attribute of selected transactions.
- data_flip:      XORs a mask into the data word of selected transactions.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import numpy as np
from loguru import logger

from socshield.channel.frame import Frame, words_to_bytes
from socshield.core.bits import monobit_statistic
from socshield.core.errors import EmptyTapLogError, FrameFormatError, ModeError
from socshield.core.models import BusTransaction, TxnKind

from .crypto_ip import DATA_IN, DATA_OUT
from .partition import CRYPTO_IP

LEAK_WINDOW_BYTES = 8


class TapKind(str, Enum):
    EAVESDROP_FIFO = "eavesdrop_fifo"
    NS_BIT_FLIP = "ns_bit_flip"
    DATA_FLIP = "data_flip"


class TapLog:
    """Append-only record of (cycle, transaction) in delivery order."""

    def __init__(self) -> None:
        self._entries: List[Tuple[int, BusTransaction]] = []

    def append(self, cycle: int, txn: BusTransaction) -> None:
        if self._entries and cycle < self._entries[-1][0]:
            raise ValueError("tap log entries must be appended in cycle order")
        self._entries.append((cycle, txn))

    @property
    def entries(self) -> Tuple[Tuple[int, BusTransaction], ...]:
        return tuple(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Tuple[int, BusTransaction]]:
        return iter(tuple(self._entries))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TapLog):
            return NotImplemented
        return self._entries == other._entries

    def words(self, address: int, kind: TxnKind) -> List[int]:
        return [txn.data for _, txn in self._entries if txn.address == address and txn.kind is kind]


@dataclass
class TrojanTap:
    kind: TapKind
    link: str
    name: str = "trojan"
    originators: Optional[FrozenSet[str]] = None
    address_range: Optional[Tuple[int, int]] = None  # [start, end)
    flip_mask: int = 0x0000_0001
    skip: int = 0
    max_hits: Optional[int] = None
    log: TapLog = field(default_factory=TapLog)
    attached_at: Optional[int] = None
    hits: int = 0
    _seen: int = 0

    def __post_init__(self) -> None:
        self.kind = TapKind(self.kind)
        if self.originators is not None:
            self.originators = frozenset(self.originators)

    @property
    def passive(self) -> bool:
        return self.kind is TapKind.EAVESDROP_FIFO

    def _selects(self, txn: BusTransaction) -> bool:
        if self.originators is not None and txn.originator not in self.originators:
            return False
        if self.address_range is not None:
            start, end = self.address_range
            if not start <= txn.address < end:
                return False
        self._seen += 1
        if self._seen <= self.skip:
            return False
        if self.max_hits is not None and self.hits >= self.max_hits:
            return False
        return True

    def on_request(self, cycle: int, txn: BusTransaction) -> BusTransaction:
        if self.kind is TapKind.NS_BIT_FLIP and self._selects(txn):
            self.hits += 1
            txn = replace(txn, ns_attr=not txn.ns_attr)
            self.log.append(cycle, txn)
            logger.trace("{} flipped NS bit at 0x{:08x}", self.name, txn.address)
        elif (
            self.kind is TapKind.DATA_FLIP
            and txn.kind is TxnKind.WRITE
            and self._selects(txn)
        ):
            self.hits += 1
            txn = replace(txn, data=(txn.data ^ self.flip_mask) & 0xFFFF_FFFF)
            self.log.append(cycle, txn)
        return txn

    def on_response(self, cycle: int, txn: BusTransaction) -> BusTransaction:
        if self.kind is TapKind.EAVESDROP_FIFO:
            self.log.append(cycle, txn)
        elif (
            self.kind is TapKind.DATA_FLIP
            and txn.kind is TxnKind.READ
            and self._selects(txn)
        ):
            self.hits += 1
            txn = replace(txn, data=(txn.data ^ self.flip_mask) & 0xFFFF_FFFF)
            self.log.append(cycle, txn)
        return txn


@dataclass(frozen=True)
class LeakageReport:
    exact_match: bool
    matching_byte_fraction: float
    monobit_statistic: float
    leaked_windows: int
    observed_bytes: int
    frames: int

    def to_payload(self) -> Dict[str, object]:
        return {
            "exact_match": self.exact_match,
            "matching_byte_fraction": round(self.matching_byte_fraction, 6),
            "monobit_statistic": round(self.monobit_statistic, 6),
            "leaked_windows": self.leaked_windows,
            "observed_bytes": self.observed_bytes,
            "frames": self.frames,
        }


def _frames_from_words(words: List[int]) -> List[Frame]:
    raw = words_to_bytes(words)
    frames: List[Frame] = []
    offset = 0
    while len(raw) - offset > 0:
        try:
            frame, end = Frame.decode_prefix(raw, offset)
        except FrameFormatError:
            # Tap attached mid-frame or trailing partial frame.
            break
        frames.append(frame)
        offset = end + (-end % 4)
    return frames


def reconstruct_payload(sim, tap: TrojanTap) -> Tuple[bytes, int]:
    """Payload bytes of every frame the tap saw, frames into the IP first."""
    base = sim.partition.range_for(CRYPTO_IP).base
    inbound = _frames_from_words(tap.log.words(base + DATA_IN, TxnKind.WRITE))
    outbound = _frames_from_words(tap.log.words(base + DATA_OUT, TxnKind.READ))
    frames = inbound + outbound
    return b"".join(frame.ciphertext for frame in frames), len(frames)


def _count_leaked_windows(observed: bytes, known: bytes) -> int:
    if len(known) < LEAK_WINDOW_BYTES or len(observed) < LEAK_WINDOW_BYTES:
        return 0
    seen = {
        observed[i : i + LEAK_WINDOW_BYTES]
        for i in range(len(observed) - LEAK_WINDOW_BYTES + 1)
    }
    return sum(
        1
        for i in range(len(known) - LEAK_WINDOW_BYTES + 1)
        if known[i : i + LEAK_WINDOW_BYTES] in seen
    )


def leakage_report(sim, tap: TrojanTap, known_plaintext: bytes) -> LeakageReport:
    if not tap.passive:
        raise ModeError(f"leakage analysis needs an eavesdrop tap, got {tap.kind.value}")
    if not len(tap.log):
        raise EmptyTapLogError(f"tap {tap.name} on {tap.link} recorded nothing")
    known = bytes(known_plaintext)
    observed, frames = reconstruct_payload(sim, tap)
    if known:
        overlap = min(len(observed), len(known))
        matches = int(
            np.count_nonzero(
                np.frombuffer(observed[:overlap], dtype=np.uint8)
                == np.frombuffer(known[:overlap], dtype=np.uint8)
            )
        )
        fraction = matches / len(known)
    else:
        fraction = 1.0 if not observed else 0.0
    report = LeakageReport(
        exact_match=observed == known,
        matching_byte_fraction=fraction,
        monobit_statistic=monobit_statistic(observed),
        leaked_windows=_count_leaked_windows(observed, known),
        observed_bytes=len(observed),
        frames=frames,
    )
    logger.info("Leakage report for {}: {}", tap.name, report.to_payload())
    return report
