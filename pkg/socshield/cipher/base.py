"""
Common lifecycle for the radix-parameterized stream ciphers.

A cipher instance goes Loaded -> Initializing -> Streaming (-> Finalized for the
authenticated mode). Each step advances the state by `radix` clocks at once; the
per-clock update is unrolled over the whole word so that a step at radix r is
bit-for-bit identical to r single-bit steps.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import ClassVar

from loguru import logger

from socshield.constants import CLOCK_SATURATION, KEYSTREAM_CAP_BITS
from socshield.core.bits import BIT_REVERSE, xor_bytes
from socshield.core.errors import (
    KeystreamExhaustedError,
    LengthMismatchError,
    ModeError,
    ParameterSizeError,
    SequencingError,
)
from socshield.core.models import (
    CipherKind,
    CipherParams,
    CipherStats,
    KeystreamChunk,
    Phase,
    Radix,
    RadixLike,
    as_radix,
)


class StreamCipher(ABC):
    kind: ClassVar[CipherKind]
    init_clocks: ClassVar[int]
    # Trivium packs keystream bits LSB-first into bytes, Grain-128a MSB-first.
    lsb_first: ClassVar[bool]

    def __init__(self, key: bytes, iv: bytes) -> None:
        key = bytes(key)
        iv = bytes(iv)
        params = CipherParams.for_kind(self.mode)
        if len(key) != params.key_bytes:
            raise ParameterSizeError(
                f"{self.mode.value} key must be {params.key_bits} bits, got {len(key) * 8}"
            )
        if len(iv) != params.iv_bytes:
            raise ParameterSizeError(
                f"{self.mode.value} IV must be {params.iv_bits} bits, got {len(iv) * 8}"
            )
        self.params = params
        self.phase = Phase.LOADED
        self.clocks_done = 0
        self.init_steps = 0
        self.preload_steps = 0
        self.keystream_steps = 0
        self.emitted_bits = 0
        self._load(key, iv)

    @classmethod
    def load(cls, key: bytes, iv: bytes, **kwargs) -> "StreamCipher":
        return cls(key, iv, **kwargs)

    @property
    def mode(self) -> CipherKind:
        return self.kind

    # -- hooks ---------------------------------------------------------------

    @abstractmethod
    def _load(self, key: bytes, iv: bytes) -> None:
        """Place key and IV into the state registers."""

    @abstractmethod
    def _clock(self, width: int, warmup: bool) -> int:
        """Advance `width` clocks; return the pre-output word (bit c = clock c)."""

    def _after_init(self, radix: Radix) -> None:
        pass

    def _emit(self, radix: Radix) -> int:
        word = self._clock(int(radix), False)
        self._count(int(radix))
        return word

    # -- lifecycle -----------------------------------------------------------

    def _count(self, clocks: int) -> None:
        self.clocks_done = min(self.clocks_done + clocks, CLOCK_SATURATION)

    def initialize(self, radix: RadixLike) -> int:
        """Run the warm-up phase; return the number of steps it took."""
        r = as_radix(radix)
        if self.phase is not Phase.LOADED:
            raise SequencingError(f"cannot initialize a cipher in phase {self.phase.value}")
        self.phase = Phase.INITIALIZING
        steps = self.init_clocks // int(r)
        for _ in range(steps):
            self._clock(int(r), True)
        self._count(self.init_clocks)
        self.init_steps = steps
        self._after_init(r)
        self.phase = Phase.STREAMING
        logger.trace(
            "{} initialized at radix {} in {} steps", self.mode.value, int(r), steps
        )
        return steps

    def _require_streaming(self) -> None:
        if self.phase is Phase.FINALIZED:
            raise SequencingError("keystream requested after MAC finalization")
        if self.phase is not Phase.STREAMING or self.clocks_done < self.init_clocks:
            raise SequencingError(
                f"keystream requested before {self.init_clocks} warm-up clocks"
            )

    def _next_word(self, radix: Radix) -> int:
        self._require_streaming()
        width = int(radix)
        if self.emitted_bits + width > KEYSTREAM_CAP_BITS:
            raise KeystreamExhaustedError(
                f"{self.emitted_bits} keystream bits already emitted under this key/IV"
            )
        word = self._emit(radix)
        self.emitted_bits += width
        self.keystream_steps += 1
        return word

    def step(self, radix: RadixLike) -> KeystreamChunk:
        r = as_radix(radix)
        return KeystreamChunk(
            value=self._next_word(r), width=int(r), producer=self.mode, radix=r
        )

    def keystream_bytes(self, nbytes: int, radix: RadixLike) -> bytes:
        """
        Produce `nbytes` of keystream in the cipher's byte packing.

        Whole steps are always taken; bits past `nbytes` of the final step are
        discarded.
        """
        r = as_radix(radix)
        width = int(r)
        if nbytes < 0:
            raise ValueError("nbytes must be non-negative")
        out = bytearray()
        if width >= 8:
            per_step = width // 8
            for _ in range(-(-nbytes // per_step)):
                out += self._next_word(r).to_bytes(per_step, "little")
        else:
            for _ in range(nbytes):
                byte = 0
                for position in range(0, 8, width):
                    byte |= self._next_word(r) << position
                out.append(byte)
        data = bytes(out[:nbytes])
        return data if self.lsb_first else data.translate(BIT_REVERSE)

    def apply(self, data: bytes, radix: RadixLike) -> bytes:
        """XOR `data` with the next len(data) keystream bytes."""
        return keystream_xor(self.keystream_bytes(len(data), radix), data)

    def finalize_mac(self, message: bytes) -> bytes:
        raise ModeError(f"{self.mode.value} has no authentication mode")

    def stats(self) -> CipherStats:
        return CipherStats(
            init_steps=self.init_steps,
            keystream_steps=self.keystream_steps,
            preload_steps=self.preload_steps,
            clocks=self.clocks_done,
        )

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(phase={self.phase.value}, "
            f"clocks_done={self.clocks_done}, emitted_bits={self.emitted_bits})"
        )


def keystream_xor(stream: bytes, data: bytes) -> bytes:
    """Encrypt or decrypt; `stream` must be exactly as long as `data`."""
    if len(stream) != len(data):
        raise LengthMismatchError(
            f"keystream length {len(stream)} != data length {len(data)}"
        )
    return xor_bytes(stream, data)
