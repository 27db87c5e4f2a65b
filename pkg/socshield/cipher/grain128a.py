"""
Grain-128a with 1/8/16/32 bits per step, with and without authentication.

Both 128-bit registers are Python ints with cell k at bit k, so `S >> k` is the
word of tap s_k over the next clocks. The deepest tap index is 96 and the
feedback enters at 127, so every tap word stays valid for steps of up to 32.

Authenticated mode: after warm-up the first 32 pre-output bits preload the
accumulator and the next 32 the shift register. From then on even pre-output
bits are keystream and odd ones feed the shift register. A message bit of one
adds the shift register into the accumulator; a final padding one does the same
after the last message bit. The tag is the last `tag_bits` accumulator bits.
"""

from __future__ import annotations

from typing import List, Optional

from socshield.constants import (
    GRAIN_INIT_CLOCKS,
    GRAIN_MAC_PRELOAD_BITS,
    GRAIN_MAC_REGISTER_BITS,
    GRAIN_MAX_TAG_BITS,
    GRAIN_REGISTER_BITS,
)
from socshield.core.bits import deinterleave, reverse_bits, time_ordered_msb
from socshield.core.errors import ModeError, ParameterSizeError, SequencingError
from socshield.core.models import CipherKind, KeystreamChunk, Phase, Radix, RadixLike

from .base import StreamCipher

_MASK32 = (1 << GRAIN_MAC_REGISTER_BITS) - 1
_LFSR_PAD = ((1 << 31) - 1) << 96  # s96..s126 = 1, s127 = 0


class Grain128a(StreamCipher):
    kind = CipherKind.GRAIN128A
    init_clocks = GRAIN_INIT_CLOCKS
    lsb_first = False

    def __init__(self, key: bytes, iv: bytes, tag_bits: Optional[int] = None) -> None:
        if tag_bits is not None and not 0 < tag_bits <= GRAIN_MAX_TAG_BITS:
            raise ParameterSizeError(
                f"tag length must be in 1..{GRAIN_MAX_TAG_BITS} bits, got {tag_bits}"
            )
        self.tag_bits = tag_bits
        self._accumulator = 0
        self._shift = 0
        self._mac_words: List[tuple[int, int]] = []
        self._mac_bits = 0
        super().__init__(key, iv)

    @property
    def authenticated(self) -> bool:
        return self.tag_bits is not None

    @property
    def mode(self) -> CipherKind:
        return CipherKind.GRAIN128A_AUTH if self.authenticated else CipherKind.GRAIN128A

    def _load(self, key: bytes, iv: bytes) -> None:
        self._nfsr = reverse_bits(int.from_bytes(key, "big"), GRAIN_REGISTER_BITS)
        self._lfsr = reverse_bits(int.from_bytes(iv, "big"), 96) | _LFSR_PAD

    def _clock(self, width: int, warmup: bool) -> int:
        s, b = self._lfsr, self._nfsr
        mask = (1 << width) - 1
        y = (
            ((b >> 12) & (s >> 8))
            ^ ((s >> 13) & (s >> 20))
            ^ ((b >> 95) & (s >> 42))
            ^ ((s >> 60) & (s >> 79))
            ^ ((b >> 12) & (b >> 95) & (s >> 94))
            ^ (s >> 93)
            ^ (b >> 2)
            ^ (b >> 15)
            ^ (b >> 36)
            ^ (b >> 45)
            ^ (b >> 64)
            ^ (b >> 73)
            ^ (b >> 89)
        ) & mask
        f = (s ^ (s >> 7) ^ (s >> 38) ^ (s >> 70) ^ (s >> 81) ^ (s >> 96)) & mask
        g = (
            s
            ^ b
            ^ (b >> 26)
            ^ (b >> 56)
            ^ (b >> 91)
            ^ (b >> 96)
            ^ ((b >> 3) & (b >> 67))
            ^ ((b >> 11) & (b >> 13))
            ^ ((b >> 17) & (b >> 18))
            ^ ((b >> 27) & (b >> 59))
            ^ ((b >> 40) & (b >> 48))
            ^ ((b >> 61) & (b >> 65))
            ^ ((b >> 68) & (b >> 84))
            ^ ((b >> 88) & (b >> 92) & (b >> 93) & (b >> 95))
            ^ ((b >> 22) & (b >> 24) & (b >> 25))
            ^ ((b >> 70) & (b >> 78) & (b >> 82))
        ) & mask
        if warmup:
            f ^= y
            g ^= y
        self._lfsr = (s >> width) | (f << (GRAIN_REGISTER_BITS - width))
        self._nfsr = (b >> width) | (g << (GRAIN_REGISTER_BITS - width))
        return y

    def _after_init(self, radix: Radix) -> None:
        if not self.authenticated:
            return
        width = int(radix)
        steps = GRAIN_MAC_PRELOAD_BITS // width
        preload = 0
        for index in range(steps):
            preload |= self._clock(width, False) << (index * width)
        self._count(GRAIN_MAC_PRELOAD_BITS)
        self.preload_steps = steps
        self._accumulator = preload & _MASK32
        self._shift = preload >> GRAIN_MAC_REGISTER_BITS

    def _emit(self, radix: Radix) -> int:
        if not self.authenticated:
            return super()._emit(radix)
        width = int(radix)
        # Two passes of r clocks give 2r pre-output bits: r keystream + r MAC.
        low = self._clock(width, False)
        high = self._clock(width, False)
        self._count(2 * width)
        keystream, mac = deinterleave(low | (high << width), 2 * width)
        self._mac_words.append((mac, width))
        self._mac_bits += width
        return keystream

    def _mac_stream(self, nbits: int) -> bytes:
        """First `nbits` MAC-stream bits, time-ordered, packed little-endian."""
        out = bytearray()
        acc = 0
        fill = 0
        for value, width in self._mac_words:
            acc |= value << fill
            fill += width
            while fill >= 8:
                out.append(acc & 0xFF)
                acc >>= 8
                fill -= 8
            if len(out) * 8 >= nbits:
                break
        if fill:
            out.append(acc & 0xFF)
        return bytes(out[: (nbits + 7) // 8])

    def finalize_mac(self, message: bytes) -> bytes:
        """
        Absorb `message` against the MAC stream produced alongside its keystream
        and return the tag (tag_bits bits, MSB-first, zero-padded to bytes).
        """
        if not self.authenticated:
            raise ModeError("grain128a was loaded without authentication")
        if self.phase is Phase.FINALIZED:
            raise SequencingError("MAC already finalized")
        if self.phase is not Phase.STREAMING:
            raise SequencingError("MAC finalization before initialization")
        message = bytes(message)
        nbits = len(message) * 8
        if nbits > self._mac_bits:
            raise SequencingError(
                f"message of {nbits} bits but only {self._mac_bits} keystream bits produced"
            )
        bits = time_ordered_msb(message).to_bytes(len(message), "little")
        stream = self._mac_stream(nbits).ljust(len(message), b"\0")
        acc, shift = self._accumulator, self._shift
        for offset in range(0, len(message), 4):
            block = int.from_bytes(bits[offset : offset + 4], "little")
            extended = shift | (
                int.from_bytes(stream[offset : offset + 4], "little")
                << GRAIN_MAC_REGISTER_BITS
            )
            while block:
                lowest = block & -block
                acc ^= (extended >> (lowest.bit_length() - 1)) & _MASK32
                block ^= lowest
            taken = 8 * min(4, len(message) - offset)
            shift = (extended >> taken) & _MASK32
        acc ^= shift  # padding bit
        self._accumulator, self._shift = acc, shift
        self._mac_words.clear()
        self.phase = Phase.FINALIZED
        w = self.tag_bits
        tag = acc >> (GRAIN_MAC_REGISTER_BITS - w)
        tag = reverse_bits(tag, w) << ((8 - w % 8) % 8)
        return tag.to_bytes((w + 7) // 8, "big")


def grain_load(key: bytes, iv: bytes, tag_bits: Optional[int] = None) -> Grain128a:
    return Grain128a(key, iv, tag_bits=tag_bits)


def grain_init(state: Grain128a, radix: RadixLike) -> Grain128a:
    state.initialize(radix)
    return state


def grain_step(state: Grain128a, radix: RadixLike) -> tuple[Grain128a, KeystreamChunk]:
    return state, state.step(radix)


def grain_mac_finalize(state: Grain128a, message: bytes) -> bytes:
    return state.finalize_mac(message)
