"""
Bit-order helpers shared by the cipher implementations and the leakage analysis.
"""

from __future__ import annotations

import numpy as np

# BIT_REVERSE[b] is b with its eight bits mirrored; use with bytes.translate.
BIT_REVERSE = bytes(int(f"{value:08b}"[::-1], 2) for value in range(256))

# Even / odd bit lanes of a byte, each packed into the low nibble.
_EVEN_LANE = bytes(
    sum(((value >> (2 * i)) & 1) << i for i in range(4)) for value in range(256)
)
_ODD_LANE = bytes(
    sum(((value >> (2 * i + 1)) & 1) << i for i in range(4)) for value in range(256)
)


def reverse_bits(value: int, width: int) -> int:
    """Mirror the low `width` bits of `value` (bit i moves to width-1-i)."""
    if width <= 0:
        return 0
    return int(f"{value:0{width}b}"[::-1], 2)


def deinterleave(value: int, nbits: int) -> tuple[int, int]:
    """Split a time-ordered bit word into its even-indexed and odd-indexed bits."""
    even = odd = 0
    for index, byte in enumerate(value.to_bytes((nbits + 7) // 8, "little")):
        even |= _EVEN_LANE[byte] << (4 * index)
        odd |= _ODD_LANE[byte] << (4 * index)
    return even, odd


def xor_bytes(left: bytes, right: bytes) -> bytes:
    if len(left) != len(right):
        raise ValueError(f"length mismatch: {len(left)} != {len(right)}")
    if not left:
        return b""
    a = np.frombuffer(left, dtype=np.uint8)
    b = np.frombuffer(right, dtype=np.uint8)
    return np.bitwise_xor(a, b).tobytes()


def time_ordered_msb(data: bytes) -> int:
    """Bits of `data` as an int whose bit t is the t-th bit sent MSB-first."""
    return int.from_bytes(data.translate(BIT_REVERSE), "little")


def ones_fraction(data: bytes) -> float:
    if not data:
        return 0.0
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    return float(bits.mean())


def monobit_statistic(data: bytes) -> float:
    """Absolute deviation of the ones fraction from one half."""
    if not data:
        return 0.5
    return abs(ones_fraction(data) - 0.5)


def parse_hex(text: str) -> bytes:
    cleaned = text.strip().replace("_", "")
    if cleaned.lower().startswith("0x"):
        cleaned = cleaned[2:]
    return bytes.fromhex(cleaned)
