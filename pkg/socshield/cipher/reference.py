"""
Bit-serial reference ciphers, written straight from the register equations.

These are deliberately slow list-of-bits models used as test oracles for the
unrolled implementations. They share no code with them.
"""

from __future__ import annotations

from typing import List, Optional, Tuple


def _bits_msb(data: bytes) -> List[int]:
    return [(byte >> (7 - i)) & 1 for byte in data for i in range(8)]


def _pack(bits: List[int], lsb_first: bool) -> bytes:
    out = bytearray()
    for offset in range(0, len(bits), 8):
        byte = 0
        for i, bit in enumerate(bits[offset : offset + 8]):
            byte |= bit << (i if lsb_first else 7 - i)
        out.append(byte)
    return bytes(out)


class ReferenceTrivium:
    def __init__(self, key: bytes, iv: bytes) -> None:
        # s[1..288]; index 0 unused.
        s = [0] * 289
        for i in range(80):
            s[i + 1] = (key[9 - i // 8] >> (7 - i % 8)) & 1
            s[i + 94] = (iv[9 - i // 8] >> (7 - i % 8)) & 1
        s[286] = s[287] = s[288] = 1
        self.s = s
        for _ in range(1152):
            self.clock()

    def clock(self) -> int:
        s = self.s
        t1 = s[66] ^ s[93]
        t2 = s[162] ^ s[177]
        t3 = s[243] ^ s[288]
        z = t1 ^ t2 ^ t3
        t1 ^= (s[91] & s[92]) ^ s[171]
        t2 ^= (s[175] & s[176]) ^ s[264]
        t3 ^= (s[286] & s[287]) ^ s[69]
        self.s = [0, t3] + s[1:93] + [t1] + s[94:177] + [t2] + s[178:288]
        return z

    def keystream_bits(self, nbits: int) -> List[int]:
        return [self.clock() for _ in range(nbits)]

    def keystream_bytes(self, nbytes: int) -> bytes:
        return _pack(self.keystream_bits(8 * nbytes), lsb_first=True)


class ReferenceGrain128a:
    def __init__(self, key: bytes, iv: bytes, tag_bits: Optional[int] = None) -> None:
        self.b = _bits_msb(key)
        self.s = _bits_msb(iv) + [1] * 31 + [0]
        self.tag_bits = tag_bits
        for _ in range(256):
            y = self._clock()
            self.s[127] ^= y
            self.b[127] ^= y
        if tag_bits is not None:
            self.acc = [self._clock() for _ in range(32)]
            self.reg = [self._clock() for _ in range(32)]

    def _clock(self) -> int:
        s, b = self.s, self.b
        h = (
            (b[12] & s[8])
            ^ (s[13] & s[20])
            ^ (b[95] & s[42])
            ^ (s[60] & s[79])
            ^ (b[12] & b[95] & s[94])
        )
        y = h ^ s[93] ^ b[2] ^ b[15] ^ b[36] ^ b[45] ^ b[64] ^ b[73] ^ b[89]
        f = s[0] ^ s[7] ^ s[38] ^ s[70] ^ s[81] ^ s[96]
        g = (
            s[0]
            ^ b[0] ^ b[26] ^ b[56] ^ b[91] ^ b[96]
            ^ (b[3] & b[67])
            ^ (b[11] & b[13])
            ^ (b[17] & b[18])
            ^ (b[27] & b[59])
            ^ (b[40] & b[48])
            ^ (b[61] & b[65])
            ^ (b[68] & b[84])
            ^ (b[88] & b[92] & b[93] & b[95])
            ^ (b[22] & b[24] & b[25])
            ^ (b[70] & b[78] & b[82])
        )
        self.s = s[1:] + [f]
        self.b = b[1:] + [g]
        return y

    def keystream_bits(self, nbits: int) -> List[int]:
        if self.tag_bits is None:
            return [self._clock() for _ in range(nbits)]
        raise TypeError("use encrypt() in authenticated mode")

    def keystream_bytes(self, nbytes: int) -> bytes:
        return _pack(self.keystream_bits(8 * nbytes), lsb_first=False)

    def encrypt(self, message: bytes) -> Tuple[bytes, bytes]:
        """Authenticated encryption of a whole message: (ciphertext, tag)."""
        if self.tag_bits is None:
            raise TypeError("loaded without a tag length")
        out = []
        for m in _bits_msb(message):
            z = self._clock()
            mac_bit = self._clock()
            out.append(m ^ z)
            if m:
                self.acc = [a ^ r for a, r in zip(self.acc, self.reg)]
            self.reg = self.reg[1:] + [mac_bit]
        self.acc = [a ^ r for a, r in zip(self.acc, self.reg)]
        w = self.tag_bits
        tag_bits = self.acc[32 - w :]
        tag_bits += [0] * ((8 - w % 8) % 8)
        return _pack(out, lsb_first=False), _pack(tag_bits, lsb_first=False)
