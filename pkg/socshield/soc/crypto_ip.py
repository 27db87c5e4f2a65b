"""
Crypto IP model: slave interface, controller, cipher block and master interface.

The TA talks to the slave interface through memory-mapped registers. Frames are
pushed word by word into DATA_IN and committed with a CTRL write; responses are
pulled from DATA_OUT. The controller buffers a whole frame before the cipher
block touches it, so a failed tag check never lets plaintext reach the master
interface.
"""

from __future__ import annotations

from collections import deque
from enum import IntEnum
from typing import TYPE_CHECKING, Deque, Dict, List, Optional

from loguru import logger

from socshield.channel.endpoint import open_bypass, open_frame, seal, seal_bypass
from socshield.channel.frame import Frame
from socshield.channel.session import ChannelSession
from socshield.core.errors import (
    AuthenticationError,
    FrameFormatError,
    ModeError,
    PartitionViolationError,
    ReplayError,
    RoutingError,
    SocShieldError,
)
from socshield.core.models import BusTransaction, CipherStats, TxnKind

from .partition import CRYPTO_IP, LINK_IP_TARGET, TARGET_IP, WorldPartition

if TYPE_CHECKING:
    from .bus import BusResponse, Interconnect

# Register offsets within the crypto IP window.
DATA_IN = 0x000
DATA_OUT = 0x004
CTRL = 0x008
STATUS = 0x00C
DEST_ADDR = 0x010
READ_ADDR = 0x014
READ_LEN = 0x018
OUT_WORDS = 0x01C

CMD_COMMIT = 0x1
CMD_READ = 0x2
CMD_RESET = 0x3


class IpStatus(IntEnum):
    OK = 0
    AUTH_ERROR = 1
    FORMAT_ERROR = 2
    REPLAY_ERROR = 3
    PARTITION_VIOLATION = 4
    ROUTING_ERROR = 5
    MODE_ERROR = 6
    BAD_COMMAND = 7
    FAILED = 8


_STATUS_FOR_ERROR = (
    (AuthenticationError, IpStatus.AUTH_ERROR),
    (FrameFormatError, IpStatus.FORMAT_ERROR),
    (ReplayError, IpStatus.REPLAY_ERROR),
    (PartitionViolationError, IpStatus.PARTITION_VIOLATION),
    (RoutingError, IpStatus.ROUTING_ERROR),
    (ModeError, IpStatus.MODE_ERROR),
)


def _status_for(exc: Exception) -> IpStatus:
    for error_type, status in _STATUS_FOR_ERROR:
        if isinstance(exc, error_type):
            return status
    return IpStatus.FAILED


class SlaveInterface:
    """Register file and word FIFOs facing the interconnect."""

    def __init__(self, controller: "Controller") -> None:
        self.controller = controller
        self.rx_fifo: List[int] = []
        self.tx_fifo: Deque[int] = deque()
        self.registers: Dict[int, int] = {DEST_ADDR: 0, READ_ADDR: 0, READ_LEN: 0}

    def read(self, offset: int) -> int:
        if offset == DATA_OUT:
            return self.tx_fifo.popleft() if self.tx_fifo else 0
        if offset == STATUS:
            return int(self.controller.status)
        if offset == OUT_WORDS:
            return len(self.tx_fifo)
        return self.registers.get(offset, 0)

    def write(self, offset: int, data: int, strobe: int = 0xF) -> None:
        if offset == DATA_IN:
            self.rx_fifo.append(data)
        elif offset == CTRL:
            self.controller.pending = data
        elif offset in self.registers:
            self.registers[offset] = data
        else:
            logger.warning("Write to unmapped crypto IP register 0x{:03x}", offset)

    def drain_rx(self) -> List[int]:
        words, self.rx_fifo = self.rx_fifo, []
        return words

    def load_tx(self, words: List[int]) -> None:
        self.tx_fifo = deque(words)


class CipherBlock:
    """Runs the channel pipelines with the IP-side session record."""

    def __init__(self, session: ChannelSession, encryption: bool = True) -> None:
        self.session = session
        self.encryption = encryption

    @property
    def last_stats(self) -> CipherStats:
        return self.session.last_stats if self.encryption else CipherStats()

    def decrypt(self, frame: Frame) -> bytes:
        self.session.last_stats = CipherStats()
        if self.encryption:
            return open_frame(self.session, frame)
        return open_bypass(self.session, frame)

    def encrypt(self, plaintext: bytes) -> Frame:
        self.session.last_stats = CipherStats()
        if self.encryption:
            return seal(self.session, plaintext)
        return seal_bypass(self.session, plaintext)


class MasterInterface:
    """Issues plaintext transactions toward the target secure IP."""

    def __init__(self, interconnect: "Interconnect", partition: WorldPartition) -> None:
        self.interconnect = interconnect
        self.partition = partition

    def _require_secure(self, address: int, length: int) -> None:
        if not self.partition.is_secure_span(address, max(length, 1), owner=TARGET_IP):
            raise PartitionViolationError(address, length, "not inside the target secure IP")

    def _check(self, response: "BusResponse") -> None:
        if not response.ok:
            raise PartitionViolationError(
                response.txn.address, 4, f"target answered {response.response.value}"
            )

    def write_block(self, address: int, data: bytes) -> None:
        self._require_secure(address, len(data))
        offset = 0
        while offset < len(data):
            word_addr = (address + offset) & ~0x3
            lane = (address + offset) - word_addr
            chunk = data[offset : offset + 4 - lane]
            word = bytearray(4)
            word[lane : lane + len(chunk)] = chunk
            strobe = sum(1 << i for i in range(lane, lane + len(chunk)))
            response = self.interconnect.issue(
                LINK_IP_TARGET,
                BusTransaction(
                    kind=TxnKind.WRITE,
                    address=word_addr,
                    originator=CRYPTO_IP,
                    data=int.from_bytes(word, "big"),
                    strobe=strobe,
                ),
            )
            self._check(response)
            offset += len(chunk)

    def read_block(self, address: int, length: int) -> bytes:
        self._require_secure(address, length)
        if length == 0:
            return b""
        start = address & ~0x3
        out = bytearray()
        for word_addr in range(start, address + length, 4):
            response = self.interconnect.issue(
                LINK_IP_TARGET,
                BusTransaction(kind=TxnKind.READ, address=word_addr, originator=CRYPTO_IP),
            )
            self._check(response)
            out += response.txn.data.to_bytes(4, "big")
        lead = address - start
        return bytes(out[lead : lead + length])


class Controller:
    """Frame reassembly, session bookkeeping and command dispatch."""

    def __init__(self, cipher_block: CipherBlock, master: MasterInterface) -> None:
        self.cipher_block = cipher_block
        self.master = master
        self.slave: SlaveInterface = SlaveInterface(self)
        self.status = IpStatus.OK
        self.last_stats = CipherStats()
        self.frames_in = 0
        self.frames_out = 0
        self.pending: Optional[int] = None

    def poll(self) -> None:
        if self.pending is not None:
            value, self.pending = self.pending, None
            self.command(value)

    def command(self, value: int) -> None:
        try:
            if value == CMD_COMMIT:
                self._commit()
            elif value == CMD_READ:
                self._read()
            elif value == CMD_RESET:
                self.slave.drain_rx()
                self.slave.load_tx([])
                self.status = IpStatus.OK
            else:
                self.status = IpStatus.BAD_COMMAND
                return
        except SocShieldError as exc:
            self.status = _status_for(exc)
            logger.warning("Crypto IP command 0x{:x} failed: {}", value, exc)

    def _account(self, stats: CipherStats) -> None:
        self.last_stats = stats
        # One cipher step per IP clock.
        self.master.interconnect.advance(stats.total_steps)

    def _commit(self) -> None:
        self.last_stats = CipherStats()
        frame = Frame.from_words(self.slave.drain_rx())
        try:
            plaintext = self.cipher_block.decrypt(frame)
        finally:
            self._account(self.cipher_block.last_stats)
        self.master.write_block(self.slave.registers[DEST_ADDR], plaintext)
        self.frames_in += 1
        self.status = IpStatus.OK

    def _read(self) -> None:
        self.last_stats = CipherStats()
        address = self.slave.registers[READ_ADDR]
        length = self.slave.registers[READ_LEN]
        data = self.master.read_block(address, length)
        frame = self.cipher_block.encrypt(data)
        self._account(self.cipher_block.last_stats)
        self.slave.load_tx(frame.to_words())
        self.frames_out += 1
        self.status = IpStatus.OK


class CryptoIpModel:
    def __init__(
        self,
        interconnect: "Interconnect",
        partition: WorldPartition,
        session: ChannelSession,
        encryption: bool = True,
    ) -> None:
        self.window = partition.range_for(CRYPTO_IP)
        self.cipher_block = CipherBlock(session, encryption)
        self.master_iface = MasterInterface(interconnect, partition)
        self.controller = Controller(self.cipher_block, self.master_iface)
        self.slave_iface = self.controller.slave

    @property
    def session(self) -> ChannelSession:
        return self.cipher_block.session

    # Slave port seen by the interconnect.

    def read(self, address: int) -> int:
        return self.slave_iface.read(address - self.window.base)

    def write(self, address: int, data: int, strobe: int = 0xF) -> None:
        self.slave_iface.write(address - self.window.base, data, strobe)

    def poll(self) -> None:
        self.controller.poll()
