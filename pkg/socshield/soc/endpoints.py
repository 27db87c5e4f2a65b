"""
Bus endpoints other than the crypto IP: the crypto TA, the target secure IP and
a non-secure IP.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from socshield.channel.endpoint import open_bypass, open_frame, seal, seal_bypass
from socshield.channel.frame import Frame
from socshield.channel.session import ChannelSession
from socshield.core.errors import ConfigurationError
from socshield.core.models import BusTransaction, TxnKind

from .partition import CRYPTO_TA, LINK_NS_BUS, LINK_TA_IP, NS_IP, AddressRange

if TYPE_CHECKING:
    from .bus import BusResponse, Interconnect


class MemorySlave:
    """Byte-addressed memory answering 32-bit big-endian word beats."""

    def __init__(self, window: AddressRange) -> None:
        self.window = window
        self.memory = bytearray(window.size)
        self.writes = 0

    def _offset(self, address: int) -> int:
        offset = (address & ~0x3) - self.window.base
        if not 0 <= offset <= self.window.size - 4:
            raise ConfigurationError(f"address 0x{address:08x} outside {self.window.owner}")
        return offset

    def read(self, address: int) -> int:
        offset = self._offset(address)
        return int.from_bytes(self.memory[offset : offset + 4], "big")

    def write(self, address: int, data: int, strobe: int = 0xF) -> None:
        offset = self._offset(address)
        word = (data & 0xFFFF_FFFF).to_bytes(4, "big")
        for lane in range(4):
            if strobe & (1 << lane):
                self.memory[offset + lane] = word[lane]
        self.writes += 1

    def peek(self, address: int, length: int) -> bytes:
        start = address - self.window.base
        if start < 0 or start + length > self.window.size:
            raise ConfigurationError(f"peek outside {self.window.owner}")
        return bytes(self.memory[start : start + length])


class TargetIp(MemorySlave):
    """The secure hardware IP the TA talks to."""


class NonSecureIp(MemorySlave):
    """Non-secure peripheral; also a bus master on the non-secure bus."""

    def __init__(self, window: AddressRange, interconnect: "Interconnect") -> None:
        super().__init__(window)
        self.interconnect = interconnect

    def access(self, kind: TxnKind, address: int, data: int = 0) -> "BusResponse":
        return self.interconnect.issue(
            LINK_NS_BUS,
            BusTransaction(kind=kind, address=address, originator=NS_IP, ns_attr=True, data=data),
        )


class CryptoTa:
    """Secure-world trusted application driving the crypto IP's registers."""

    def __init__(
        self,
        interconnect: "Interconnect",
        ip_base: int,
        session: ChannelSession,
        encryption: bool = True,
    ) -> None:
        self.interconnect = interconnect
        self.ip_base = ip_base
        self.session = session
        self.encryption = encryption

    def write_reg(self, offset: int, data: int) -> "BusResponse":
        return self.interconnect.issue(
            LINK_TA_IP,
            BusTransaction(
                kind=TxnKind.WRITE, address=self.ip_base + offset, originator=CRYPTO_TA, data=data
            ),
        )

    def read_reg(self, offset: int) -> "BusResponse":
        return self.interconnect.issue(
            LINK_TA_IP,
            BusTransaction(kind=TxnKind.READ, address=self.ip_base + offset, originator=CRYPTO_TA),
        )

    def make_frame(self, plaintext: bytes) -> Frame:
        if self.encryption:
            return seal(self.session, plaintext)
        return seal_bypass(self.session, plaintext)

    def accept_frame(self, frame: Frame) -> bytes:
        if self.encryption:
            return open_frame(self.session, frame)
        return open_bypass(self.session, frame)
