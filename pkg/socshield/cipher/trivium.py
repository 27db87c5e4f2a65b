"""
Trivium with 1/8/16/32 bits per step.

The three registers are held as Python ints with s_93, s_177 and s_288 at bit 0,
so that tap s_k of register A is `A >> (93 - k)` and bit c of any shifted tap is
that cell's value c clocks from now. A step of r clocks then computes all r
feedback bits in one go and shifts them in at the top of each register.
"""

from __future__ import annotations

from socshield.constants import TRIVIUM_INIT_CLOCKS
from socshield.core.bits import BIT_REVERSE, reverse_bits
from socshield.core.models import CipherKind, KeystreamChunk, RadixLike

from .base import StreamCipher

_A_LEN, _B_LEN, _C_LEN = 93, 84, 111


class Trivium(StreamCipher):
    kind = CipherKind.TRIVIUM
    init_clocks = TRIVIUM_INIT_CLOCKS
    lsb_first = True

    def _load(self, key: bytes, iv: bytes) -> None:
        # Bit i of the little-endian, bit-mirrored key goes to s_{i+1}.
        k = int.from_bytes(key.translate(BIT_REVERSE), "big")
        v = int.from_bytes(iv.translate(BIT_REVERSE), "big")
        self._a = reverse_bits(k, _A_LEN)
        self._b = reverse_bits(v, _B_LEN)
        self._c = 0b111  # s_286..s_288

    def _clock(self, width: int, warmup: bool) -> int:
        a, b, c = self._a, self._b, self._c
        mask = (1 << width) - 1
        t1 = (a ^ (a >> 27)) & mask  # s93 + s66
        t2 = (b ^ (b >> 15)) & mask  # s177 + s162
        t3 = (c ^ (c >> 45)) & mask  # s288 + s243
        z = t1 ^ t2 ^ t3
        t1 ^= (((a >> 2) & (a >> 1)) ^ (b >> 6)) & mask  # s91.s92 + s171
        t2 ^= (((b >> 2) & (b >> 1)) ^ (c >> 24)) & mask  # s175.s176 + s264
        t3 ^= (((c >> 2) & (c >> 1)) ^ (a >> 24)) & mask  # s286.s287 + s69
        self._a = (a >> width) | (t3 << (_A_LEN - width))
        self._b = (b >> width) | (t1 << (_B_LEN - width))
        self._c = (c >> width) | (t2 << (_C_LEN - width))
        return z

    def cell(self, index: int) -> int:
        """Value of state bit s_index (1-based)."""
        if 1 <= index <= 93:
            return (self._a >> (93 - index)) & 1
        if 94 <= index <= 177:
            return (self._b >> (177 - index)) & 1
        if 178 <= index <= 288:
            return (self._c >> (288 - index)) & 1
        raise IndexError(f"Trivium state index {index} out of range 1..288")

    def state_bits(self) -> list[int]:
        return [self.cell(i) for i in range(1, 289)]


def trivium_load(key: bytes, iv: bytes) -> Trivium:
    return Trivium(key, iv)


def trivium_init(state: Trivium, radix: RadixLike) -> Trivium:
    state.initialize(radix)
    return state


def trivium_step(state: Trivium, radix: RadixLike) -> tuple[Trivium, KeystreamChunk]:
    return state, state.step(radix)
