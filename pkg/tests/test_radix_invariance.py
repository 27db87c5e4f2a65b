"""Keystream concatenated over radix-r steps equals the bit-serial keystream."""

import pytest

from socshield.cipher import Grain128a, Trivium
from socshield.cipher.reference import ReferenceGrain128a, ReferenceTrivium

PAIRS = 100
STREAM_BYTES = 128  # 1024 bits


def _stream(cls, key, iv, radix, **kwargs):
    cipher = cls(key, iv, **kwargs)
    cipher.initialize(radix)
    return cipher.keystream_bytes(STREAM_BYTES, radix)


@pytest.mark.parametrize(
    "cls,key_len,iv_len",
    [(Trivium, 10, 10), (Grain128a, 16, 12)],
    ids=["trivium", "grain128a"],
)
def test_radix_invariance(cls, key_len, iv_len, random_bytes):
    mismatches = 0
    for _ in range(PAIRS):
        key, iv = random_bytes(key_len), random_bytes(iv_len)
        serial = _stream(cls, key, iv, 1)
        for radix in (8, 16, 32):
            mismatches += _stream(cls, key, iv, radix) != serial
    assert mismatches == 0


def test_authenticated_radix_invariance(random_bytes):
    for _ in range(PAIRS):
        key, iv, message = random_bytes(16), random_bytes(12), random_bytes(24)
        outputs = set()
        for radix in (1, 8, 16, 32):
            cipher = Grain128a(key, iv, tag_bits=32)
            cipher.initialize(radix)
            ciphertext = cipher.apply(message, radix)
            outputs.add((ciphertext, cipher.finalize_mac(message)))
        assert len(outputs) == 1


def test_serial_matches_reference_models(random_bytes):
    for _ in range(5):
        key, iv = random_bytes(10), random_bytes(10)
        assert _stream(Trivium, key, iv, 32) == ReferenceTrivium(key, iv).keystream_bytes(
            STREAM_BYTES
        )
        key, iv = random_bytes(16), random_bytes(12)
        assert _stream(Grain128a, key, iv, 32) == ReferenceGrain128a(key, iv).keystream_bytes(
            STREAM_BYTES
        )
