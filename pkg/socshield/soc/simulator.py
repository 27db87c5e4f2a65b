"""
SoC simulator: builds the interconnect and endpoints and runs TA-level
operations against them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from socshield.channel.frame import Frame
from socshield.channel.session import ChannelSession, open_session_pair
from socshield.constants import GRAIN_MAX_TAG_BITS, RADIX_SET, SESSION_ID_LIMIT
from socshield.core.errors import DeliveryError, PartitionViolationError
from socshield.core.models import CipherKind, CipherParams, CipherStats, TraceRecord, TxnKind

from .bus import BusResponse, Interconnect
from .crypto_ip import (
    CMD_COMMIT,
    CMD_READ,
    CTRL,
    DATA_IN,
    DATA_OUT,
    DEST_ADDR,
    OUT_WORDS,
    READ_ADDR,
    READ_LEN,
    STATUS,
    CryptoIpModel,
    IpStatus,
)
from .endpoints import CryptoTa, NonSecureIp, TargetIp
from .partition import CRYPTO_IP, NS_IP, TARGET_IP, WorldPartition
from .trojan import TrojanTap


class SimulatorSettings(BaseModel):
    model_config = ConfigDict(validate_assignment=True)

    cipher: CipherKind = CipherKind.TRIVIUM
    radix: int = 32
    tag_bits: Optional[int] = None
    encryption: bool = True
    trustzone_checks: bool = True
    record_trace: bool = True
    seed: int = 0
    session_id: int = 1

    @field_validator("radix")
    @classmethod
    def _radix_supported(cls, value: int) -> int:
        if value not in RADIX_SET:
            raise ValueError(f"radix must be one of {list(RADIX_SET)}")
        return value

    @field_validator("session_id")
    @classmethod
    def _session_id_fits(cls, value: int) -> int:
        if not 0 <= value < SESSION_ID_LIMIT:
            raise ValueError("session_id must fit in 16 bits")
        return value

    @model_validator(mode="after")
    def _tag_matches_cipher(self) -> "SimulatorSettings":
        if self.tag_bits is not None:
            if not self.cipher.authenticated:
                raise ValueError(f"{self.cipher.value} takes no tag length")
            if not 0 < self.tag_bits <= GRAIN_MAX_TAG_BITS:
                raise ValueError("tag_bits must be in 1..32")
        return self


@dataclass(frozen=True)
class DeliveryReport:
    delivered: bool
    status: str
    msg_counter: int
    payload_len: int
    frame_words: int
    transfer_cycles: int
    init_steps: int
    preload_steps: int
    keystream_steps: int
    ta_init_steps: int
    total_cycles: int
    error: Optional[str] = None

    @property
    def cipher_cycles(self) -> int:
        return self.init_steps + self.preload_steps + self.keystream_steps

    def to_payload(self) -> Dict[str, object]:
        return {
            "delivered": self.delivered,
            "status": self.status,
            "msg_counter": self.msg_counter,
            "payload_len": self.payload_len,
            "frame_words": self.frame_words,
            "transfer_cycles": self.transfer_cycles,
            "init_steps": self.init_steps,
            "keystream_steps": self.keystream_steps,
            "total_cycles": self.total_cycles,
            "error": self.error,
        }


@dataclass(frozen=True)
class ReadResult:
    data: bytes
    report: DeliveryReport


class Simulator:
    def __init__(self, partition: WorldPartition, settings: SimulatorSettings) -> None:
        self.partition = partition
        self.settings = settings
        self.rng = np.random.default_rng(settings.seed)
        self.interconnect = Interconnect(
            partition,
            trustzone_checks=settings.trustzone_checks,
            record_trace=settings.record_trace,
        )
        ta_session, ip_session = self._open_sessions()
        self.crypto_ip = CryptoIpModel(
            self.interconnect, partition, ip_session, settings.encryption
        )
        self.target = TargetIp(partition.range_for(TARGET_IP))
        self.ns_ip = NonSecureIp(partition.range_for(NS_IP), self.interconnect)
        self.ta = CryptoTa(
            self.interconnect,
            partition.range_for(CRYPTO_IP).base,
            ta_session,
            settings.encryption,
        )
        self.interconnect.attach_slave(CRYPTO_IP, self.crypto_ip)
        self.interconnect.attach_slave(TARGET_IP, self.target)
        self.interconnect.attach_slave(NS_IP, self.ns_ip)

    def _open_sessions(self) -> tuple[ChannelSession, ChannelSession]:
        settings = self.settings
        params = CipherParams.for_kind(settings.cipher)
        key = self.rng.integers(0, 256, size=params.key_bytes, dtype=np.uint8).tobytes()
        return open_session_pair(
            settings.cipher,
            settings.radix,
            key,
            settings.tag_bits,
            session_id=settings.session_id,
        )

    @property
    def cycle(self) -> int:
        return self.interconnect.cycle

    @property
    def trace(self) -> List[TraceRecord]:
        return self.interconnect.trace

    @property
    def taps(self) -> List[TrojanTap]:
        return [tap for taps in self.interconnect.taps.values() for tap in taps]

    def configure_session(
        self, cipher: CipherKind, radix: int, tag_bits: Optional[int] = None
    ) -> None:
        """Provision a fresh key and session on both endpoints."""
        if CipherKind(cipher) is CipherKind.GRAIN128A_AUTH and tag_bits is None:
            tag_bits = GRAIN_MAX_TAG_BITS
        self.settings = SimulatorSettings(
            **{
                **self.settings.model_dump(),
                "cipher": cipher,
                "radix": radix,
                "tag_bits": tag_bits,
                "session_id": (self.settings.session_id + 1) % SESSION_ID_LIMIT,
            }
        )
        ta_session, ip_session = self._open_sessions()
        self.ta.session = ta_session
        self.crypto_ip.cipher_block.session = ip_session
        logger.info(
            "Session {} reconfigured: {} radix {}",
            self.settings.session_id,
            self.settings.cipher.value,
            radix,
        )

    def set_encryption(self, enabled: bool) -> None:
        self.settings.encryption = enabled
        self.ta.encryption = enabled
        self.crypto_ip.cipher_block.encryption = enabled


def build_soc(
    partition: Optional[WorldPartition] = None,
    settings: Optional[SimulatorSettings] = None,
    **overrides,
) -> Simulator:
    partition = partition or WorldPartition.default()
    settings = settings.model_copy() if settings else SimulatorSettings()
    if overrides:
        settings = SimulatorSettings(**{**settings.model_dump(), **overrides})
    sim = Simulator(partition, settings)
    logger.debug("Built SoC with partition {}", partition.to_payload())
    return sim


def _status(response: BusResponse) -> str:
    if not response.ok:
        return f"BUS_{response.response.name}"
    try:
        return IpStatus(response.txn.data).name
    except ValueError:
        return f"UNKNOWN_0x{response.txn.data:08x}"


def ta_send(sim: Simulator, plaintext: bytes, address: Optional[int] = None) -> DeliveryReport:
    """Seal `plaintext` at the TA and deliver it to the target IP at `address`."""
    dest = sim.partition.range_for(TARGET_IP).base if address is None else address
    start_cycle = sim.interconnect.cycle
    start_beats = sim.interconnect.beats
    frame = sim.ta.make_frame(plaintext)
    ta_stats = sim.ta.session.last_stats if sim.ta.encryption else CipherStats()
    words = frame.to_words()

    responses = [sim.ta.write_reg(DEST_ADDR, dest)]
    responses += [sim.ta.write_reg(DATA_IN, word) for word in words]
    responses.append(sim.ta.write_reg(CTRL, CMD_COMMIT))
    status_response = sim.ta.read_reg(STATUS)
    rejected = [r for r in responses if not r.ok]
    status = _status(status_response) if not rejected else f"BUS_{rejected[0].response.name}"

    ip_stats = sim.crypto_ip.controller.last_stats if not rejected else CipherStats()
    delivered = status == IpStatus.OK.name
    report = DeliveryReport(
        delivered=delivered,
        status=status,
        msg_counter=frame.msg_counter,
        payload_len=frame.payload_len,
        frame_words=len(words),
        transfer_cycles=sim.interconnect.beats - start_beats,
        init_steps=ip_stats.init_steps,
        preload_steps=ip_stats.preload_steps,
        keystream_steps=ip_stats.keystream_steps,
        ta_init_steps=ta_stats.init_steps,
        total_cycles=sim.interconnect.cycle - start_cycle,
        error=None if delivered else status,
    )
    if delivered:
        logger.debug("Delivered {}", report.to_payload())
    else:
        logger.warning("Delivery failed: {}", report.to_payload())
    return report


def ta_read(sim: Simulator, address: int, length: int) -> ReadResult:
    """Have the crypto IP read [address, address+length) and return it sealed."""
    start_cycle = sim.interconnect.cycle
    start_beats = sim.interconnect.beats
    responses = [
        sim.ta.write_reg(READ_ADDR, address),
        sim.ta.write_reg(READ_LEN, length),
        sim.ta.write_reg(CTRL, CMD_READ),
    ]
    status_response = sim.ta.read_reg(STATUS)
    rejected = [r for r in responses if not r.ok]
    status = _status(status_response) if not rejected else f"BUS_{rejected[0].response.name}"
    if status == IpStatus.PARTITION_VIOLATION.name:
        raise PartitionViolationError(address, length, "secure read path")
    if status != IpStatus.OK.name:
        raise DeliveryError(status, f"read of {length} bytes at 0x{address:08x}")

    count = sim.ta.read_reg(OUT_WORDS).txn.data
    words = [sim.ta.read_reg(DATA_OUT).txn.data for _ in range(count)]
    frame = Frame.from_words(words)
    data = sim.ta.accept_frame(frame)
    ip_stats = sim.crypto_ip.controller.last_stats
    report = DeliveryReport(
        delivered=True,
        status=status,
        msg_counter=frame.msg_counter,
        payload_len=frame.payload_len,
        frame_words=len(words),
        transfer_cycles=sim.interconnect.beats - start_beats,
        init_steps=ip_stats.init_steps,
        preload_steps=ip_stats.preload_steps,
        keystream_steps=ip_stats.keystream_steps,
        ta_init_steps=sim.ta.session.last_stats.init_steps if sim.ta.encryption else 0,
        total_cycles=sim.interconnect.cycle - start_cycle,
    )
    logger.debug("Read back {}", report.to_payload())
    return ReadResult(data=data, report=report)


def attach_tap(sim: Simulator, tap: TrojanTap) -> Simulator:
    sim.interconnect.attach_tap(tap)
    return sim


def ns_access(
    sim: Simulator, address: int, kind: TxnKind = TxnKind.READ, data: int = 0
) -> BusResponse:
    """One transaction from the non-secure IP on the non-secure bus."""
    return sim.ns_ip.access(TxnKind(kind), address, data)
