"""
Session records for one TA <-> crypto IP pairing.

Both endpoints hold a record with the same key, cipher and radix. Each record
sends in one direction and receives in the other; the direction bit is folded
into the IV so a single key serves both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from loguru import logger
from pydantic import BaseModel, field_validator, model_validator

from socshield.constants import (
    GRAIN_MAX_TAG_BITS,
    MSG_COUNTER_LIMIT,
    RADIX_SET,
    SESSION_ID_LIMIT,
)
from socshield.core.errors import ModeError, ParameterSizeError, SessionExhaustedError
from socshield.core.models import (
    CipherKind,
    CipherParams,
    CipherStats,
    Direction,
    Radix,
    RadixLike,
    as_radix,
)


class SessionConfig(BaseModel):
    """Channel settings shared by both endpoints."""

    cipher: CipherKind = CipherKind.TRIVIUM
    radix: int = 32
    tag_bits: Optional[int] = None
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
    def _tag_matches_cipher(self) -> "SessionConfig":
        if self.tag_bits is not None:
            if not self.cipher.authenticated:
                raise ValueError(f"{self.cipher.value} takes no tag length")
            if not 0 < self.tag_bits <= GRAIN_MAX_TAG_BITS:
                raise ValueError("tag_bits must be in 1..32")
        return self


@dataclass
class ChannelSession:
    session_id: int
    cipher: CipherKind
    radix: Radix
    _key: bytearray = field(repr=False)
    direction: Direction = Direction.TA_TO_IP
    send_counter: int = 0
    recv_counter: int = 0
    tag_len_w: Optional[int] = None
    last_stats: CipherStats = field(default_factory=CipherStats)

    @property
    def key(self) -> bytes:
        return bytes(self._key)

    @property
    def authenticated(self) -> bool:
        return self.cipher.authenticated

    @property
    def params(self) -> CipherParams:
        return CipherParams.for_kind(self.cipher)

    def erase_key(self) -> None:
        for index in range(len(self._key)):
            self._key[index] = 0


def _check_key(cipher: CipherKind, key: bytes) -> bytes:
    params = CipherParams.for_kind(cipher)
    key = bytes(key)
    if len(key) != params.key_bytes:
        raise ParameterSizeError(
            f"{cipher.value} key must be {params.key_bits} bits, got {len(key) * 8}"
        )
    return key


def _check_tag(cipher: CipherKind, w: Optional[int]) -> Optional[int]:
    if cipher.authenticated:
        w = GRAIN_MAX_TAG_BITS if w is None else w
        if not 0 < w <= GRAIN_MAX_TAG_BITS:
            raise ParameterSizeError(f"tag length must be in 1..32 bits, got {w}")
        return w
    if w is not None:
        raise ModeError(f"{cipher.value} has no authentication; got tag length {w}")
    return None


def open_session(
    cipher: CipherKind,
    radix: RadixLike,
    key: bytes,
    w: Optional[int] = None,
    *,
    session_id: int = 1,
    direction: Direction = Direction.TA_TO_IP,
) -> ChannelSession:
    cipher = CipherKind(cipher)
    if not 0 <= session_id < SESSION_ID_LIMIT:
        raise ParameterSizeError(f"session id {session_id} does not fit in 16 bits")
    session = ChannelSession(
        session_id=session_id,
        cipher=cipher,
        radix=as_radix(radix),
        _key=bytearray(_check_key(cipher, key)),
        direction=Direction(direction),
        tag_len_w=_check_tag(cipher, w),
    )
    logger.debug(
        "Opened session {} ({}, radix {}, sends {})",
        session.session_id,
        cipher.value,
        int(session.radix),
        session.direction.name,
    )
    return session


def open_session_pair(
    cipher: CipherKind,
    radix: RadixLike,
    key: bytes,
    w: Optional[int] = None,
    *,
    session_id: int = 1,
) -> Tuple[ChannelSession, ChannelSession]:
    """Matching (TA side, IP side) records of one session."""
    ta = open_session(cipher, radix, key, w, session_id=session_id, direction=Direction.TA_TO_IP)
    ip = open_session(cipher, radix, key, w, session_id=session_id, direction=Direction.IP_TO_TA)
    return ta, ip


def session_from_config(
    config: SessionConfig, key: bytes, direction: Direction = Direction.TA_TO_IP
) -> ChannelSession:
    return open_session(
        config.cipher,
        config.radix,
        key,
        config.tag_bits,
        session_id=config.session_id,
        direction=direction,
    )


def derive_iv(session: ChannelSession, msg_counter: int, direction: Direction) -> bytes:
    """
    Direction bit and 63-bit counter as a big-endian 64-bit prefix, zero-padded
    to the cipher's IV width.
    """
    if not 0 <= msg_counter < MSG_COUNTER_LIMIT:
        raise SessionExhaustedError(
            f"message counter {msg_counter} exhausted for session {session.session_id}; rekey"
        )
    prefix = ((int(direction) << 63) | msg_counter).to_bytes(8, "big")
    return prefix.ljust(session.params.iv_bytes, b"\0")


def rekey(session: ChannelSession, new_key: bytes) -> ChannelSession:
    new_key = _check_key(session.cipher, new_key)
    session.erase_key()
    session._key = bytearray(new_key)
    session.send_counter = 0
    session.recv_counter = 0
    logger.info("Session {} rekeyed; counters reset", session.session_id)
    return session
