"""
Seal / open pipelines shared by the crypto TA and the crypto IP controller.

Every frame gets a fresh cipher instance keyed with the session key and the IV
derived from (direction, counter), fully warmed up before any keystream is used.
"""

from __future__ import annotations

import hmac

from loguru import logger

from socshield.cipher import keystream_xor, new_cipher
from socshield.constants import MAX_PAYLOAD_BYTES, MSG_COUNTER_LIMIT
from socshield.core.errors import (
    AuthenticationError,
    FrameFormatError,
    ModeError,
    PayloadTooLargeError,
    ReplayError,
    RoutingError,
    SessionExhaustedError,
)
from socshield.core.models import Direction

from .frame import Frame
from .session import ChannelSession, derive_iv


def _cipher_for(session: ChannelSession, counter: int, direction: Direction):
    cipher = new_cipher(
        session.cipher,
        session.key,
        derive_iv(session, counter, direction),
        tag_bits=session.tag_len_w,
    )
    cipher.initialize(session.radix)
    return cipher


def _next_send_counter(session: ChannelSession) -> int:
    counter = session.send_counter
    if counter >= MSG_COUNTER_LIMIT:
        raise SessionExhaustedError(
            f"session {session.session_id} sent {counter} frames; rekey required"
        )
    return counter


def _check_payload(plaintext: bytes) -> None:
    if len(plaintext) > MAX_PAYLOAD_BYTES:
        raise PayloadTooLargeError(
            f"payload of {len(plaintext)} bytes exceeds {MAX_PAYLOAD_BYTES}"
        )


def seal(session: ChannelSession, plaintext: bytes) -> Frame:
    plaintext = bytes(plaintext)
    _check_payload(plaintext)
    counter = _next_send_counter(session)
    cipher = _cipher_for(session, counter, session.direction)
    ciphertext = keystream_xor(
        cipher.keystream_bytes(len(plaintext), session.radix), plaintext
    )
    tag = cipher.finalize_mac(plaintext) if session.authenticated else None
    session.send_counter = counter + 1
    session.last_stats = cipher.stats()
    frame = Frame(
        session_id=session.session_id,
        msg_counter=counter,
        direction=session.direction,
        ciphertext=ciphertext,
        tag=tag,
        tag_bits=session.tag_len_w if tag is not None else None,
    )
    logger.debug("Sealed frame {}", frame.to_payload())
    return frame


def seal_bypass(session: ChannelSession, plaintext: bytes) -> Frame:
    """Frame the payload in clear; the unencrypted baseline channel."""
    plaintext = bytes(plaintext)
    _check_payload(plaintext)
    counter = _next_send_counter(session)
    session.send_counter = counter + 1
    return Frame(
        session_id=session.session_id,
        msg_counter=counter,
        direction=session.direction,
        ciphertext=plaintext,
        bypass=True,
    )


def _check_incoming(session: ChannelSession, frame: Frame) -> None:
    if frame.session_id != session.session_id:
        raise RoutingError(
            f"frame for session {frame.session_id} reached session {session.session_id}"
        )
    if frame.direction is session.direction:
        raise RoutingError(f"frame travels {frame.direction.name}, this endpoint sends that way")
    if frame.msg_counter >= MSG_COUNTER_LIMIT:
        raise FrameFormatError(
            f"frame counter {frame.msg_counter} outside the 63-bit counter space"
        )
    if frame.msg_counter < session.recv_counter:
        raise ReplayError(frame.msg_counter, session.recv_counter)


def open_frame(session: ChannelSession, frame: Frame) -> bytes:
    _check_incoming(session, frame)
    if frame.bypass:
        raise ModeError("plaintext bypass frame on an encrypted session")
    if session.authenticated:
        if frame.tag is None:
            raise AuthenticationError(f"missing tag on frame {frame.msg_counter}")
        if frame.tag_bits != session.tag_len_w:
            raise AuthenticationError(
                f"tag length {frame.tag_bits} does not match session's {session.tag_len_w}"
            )
    elif frame.tag is not None:
        raise ModeError("tagged frame on an unauthenticated session")

    cipher = _cipher_for(session, frame.msg_counter, frame.direction)
    plaintext = keystream_xor(
        cipher.keystream_bytes(frame.payload_len, session.radix), frame.ciphertext
    )
    if session.authenticated:
        expected = cipher.finalize_mac(plaintext)
        if not hmac.compare_digest(expected, frame.tag):
            session.last_stats = cipher.stats()
            logger.warning("Tag mismatch on frame {}", frame.to_payload())
            raise AuthenticationError(
                f"tag mismatch on session {frame.session_id} frame {frame.msg_counter}"
            )
    session.recv_counter = frame.msg_counter + 1
    session.last_stats = cipher.stats()
    logger.debug("Opened frame {}", frame.to_payload())
    return plaintext


def open_bypass(session: ChannelSession, frame: Frame) -> bytes:
    _check_incoming(session, frame)
    if not frame.bypass:
        raise ModeError("encrypted frame on a bypass channel")
    session.recv_counter = frame.msg_counter + 1
    return frame.ciphertext
