"""
Wire codec for secure-channel frames.

Layout (big-endian):

    session_id  u16
    msg_counter u64
    flags       u8    bit0 tag present, bit1 direction, bit2 plaintext bypass,
                      bits3..7 tag length - 1 (when bit0 is set)
    payload_len u32
    payload     payload_len bytes
    tag         ceil(w / 8) bytes when bit0 is set

On the bus a frame travels as 32-bit big-endian words, zero-padded at the end.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from socshield.constants import MAX_PAYLOAD_BYTES, SESSION_ID_LIMIT
from socshield.core.errors import FrameFormatError
from socshield.core.models import Direction

HEADER = struct.Struct(">HQBI")

FLAG_AUTH = 0x01
FLAG_DIRECTION = 0x02
FLAG_BYPASS = 0x04
TAG_LEN_SHIFT = 3

WORD_BYTES = 4


def tag_bytes(tag_bits: int) -> int:
    return (tag_bits + 7) // 8


@dataclass(frozen=True)
class Frame:
    session_id: int
    msg_counter: int
    direction: Direction
    ciphertext: bytes
    tag: Optional[bytes] = None
    tag_bits: Optional[int] = None
    bypass: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.session_id < SESSION_ID_LIMIT:
            raise FrameFormatError(f"session id {self.session_id} does not fit in 16 bits")
        if not 0 <= self.msg_counter < 1 << 64:
            raise FrameFormatError(f"message counter {self.msg_counter} does not fit in 64 bits")
        if len(self.ciphertext) > MAX_PAYLOAD_BYTES:
            raise FrameFormatError(f"payload of {len(self.ciphertext)} bytes exceeds limit")
        if (self.tag is None) != (self.tag_bits is None):
            raise FrameFormatError("tag and tag length must be given together")
        if self.tag_bits is not None:
            if not 0 < self.tag_bits <= 32:
                raise FrameFormatError(f"tag length {self.tag_bits} outside 1..32")
            if len(self.tag) != tag_bytes(self.tag_bits):
                raise FrameFormatError("tag byte length does not match tag length")

    @property
    def payload_len(self) -> int:
        return len(self.ciphertext)

    @property
    def authenticated(self) -> bool:
        return self.tag is not None

    @property
    def flags(self) -> int:
        flags = 0
        if self.tag_bits is not None:
            flags |= FLAG_AUTH | ((self.tag_bits - 1) << TAG_LEN_SHIFT)
        if self.direction is Direction.IP_TO_TA:
            flags |= FLAG_DIRECTION
        if self.bypass:
            flags |= FLAG_BYPASS
        return flags

    @property
    def encoded_len(self) -> int:
        return HEADER.size + self.payload_len + len(self.tag or b"")

    def encode(self) -> bytes:
        header = HEADER.pack(self.session_id, self.msg_counter, self.flags, self.payload_len)
        return header + self.ciphertext + (self.tag or b"")

    @classmethod
    def decode_prefix(cls, data: bytes, offset: int = 0) -> Tuple["Frame", int]:
        """Decode one frame starting at `offset`; return it and the end offset."""
        if len(data) - offset < HEADER.size:
            raise FrameFormatError(
                f"truncated header: {len(data) - offset} of {HEADER.size} bytes"
            )
        session_id, counter, flags, length = HEADER.unpack_from(data, offset)
        if length > MAX_PAYLOAD_BYTES:
            raise FrameFormatError(f"declared payload length {length} exceeds limit")
        tag_bits = ((flags >> TAG_LEN_SHIFT) + 1) if flags & FLAG_AUTH else None
        if not flags & FLAG_AUTH and flags >> TAG_LEN_SHIFT:
            raise FrameFormatError(f"tag length bits set without tag flag: 0x{flags:02x}")
        if flags & FLAG_AUTH and flags & FLAG_BYPASS:
            raise FrameFormatError("bypass frame cannot carry a tag")
        start = offset + HEADER.size
        tag_len = tag_bytes(tag_bits) if tag_bits is not None else 0
        end = start + length + tag_len
        if end > len(data):
            raise FrameFormatError(
                f"declared length {length} (+{tag_len} tag) exceeds {len(data) - start} available bytes"
            )
        frame = cls(
            session_id=session_id,
            msg_counter=counter,
            direction=Direction.IP_TO_TA if flags & FLAG_DIRECTION else Direction.TA_TO_IP,
            ciphertext=bytes(data[start : start + length]),
            tag=bytes(data[start + length : end]) if tag_bits is not None else None,
            tag_bits=tag_bits,
            bypass=bool(flags & FLAG_BYPASS),
        )
        return frame, end

    @classmethod
    def decode(cls, data: bytes) -> "Frame":
        frame, end = cls.decode_prefix(data)
        if end != len(data):
            raise FrameFormatError(f"{len(data) - end} trailing bytes after frame")
        return frame

    def to_words(self) -> List[int]:
        raw = self.encode()
        raw += b"\0" * (-len(raw) % WORD_BYTES)
        return [
            int.from_bytes(raw[i : i + WORD_BYTES], "big")
            for i in range(0, len(raw), WORD_BYTES)
        ]

    @classmethod
    def from_words(cls, words: Sequence[int]) -> "Frame":
        raw = words_to_bytes(words)
        frame, end = cls.decode_prefix(raw)
        if any(raw[end:]) or len(raw) - end >= WORD_BYTES:
            raise FrameFormatError("unexpected data after frame padding")
        return frame

    def to_payload(self) -> Dict[str, object]:
        """Log-safe summary; never includes payload or tag bytes."""
        return {
            "session_id": self.session_id,
            "msg_counter": self.msg_counter,
            "direction": self.direction.name,
            "payload_len": self.payload_len,
            "flags": f"0x{self.flags:02x}",
        }


def words_to_bytes(words: Sequence[int]) -> bytes:
    return b"".join((word & 0xFFFFFFFF).to_bytes(WORD_BYTES, "big") for word in words)


def word_count(nbytes: int) -> int:
    return -(-nbytes // WORD_BYTES)
