import pytest

from socshield.core.bits import (
    BIT_REVERSE,
    deinterleave,
    monobit_statistic,
    ones_fraction,
    parse_hex,
    reverse_bits,
    time_ordered_msb,
    xor_bytes,
)


def test_bit_reverse_table():
    assert BIT_REVERSE[0x01] == 0x80
    assert BIT_REVERSE[0x0F] == 0xF0
    assert bytes([0x80, 0x03]).translate(BIT_REVERSE) == bytes([0x01, 0xC0])


def test_reverse_bits():
    assert reverse_bits(0b0011, 4) == 0b1100
    assert reverse_bits(1, 80) == 1 << 79
    assert reverse_bits(5, 0) == 0


def test_deinterleave_splits_even_and_odd_bits():
    assert deinterleave(0b10, 2) == (0, 1)
    assert deinterleave(0b0110, 4) == (0b10, 0b01)
    even, odd = deinterleave(0xAAAA_AAAA, 32)
    assert even == 0
    assert odd == 0xFFFF


def test_time_ordered_msb():
    # First bit sent is the MSB of the first byte.
    assert time_ordered_msb(b"\x80") == 1
    assert time_ordered_msb(b"\x00\x80") == 1 << 8


def test_xor_bytes():
    assert xor_bytes(b"\x0f\xf0", b"\xff\xff") == b"\xf0\x0f"
    assert xor_bytes(b"", b"") == b""
    with pytest.raises(ValueError):
        xor_bytes(b"\x00", b"")


def test_monobit_statistic():
    assert monobit_statistic(b"\x00" * 16) == 0.5
    assert monobit_statistic(b"\x0f" * 16) == 0.0
    assert ones_fraction(b"\xff") == 1.0
    assert monobit_statistic(b"") == 0.5


def test_parse_hex():
    assert parse_hex("0xDEAD_beef") == bytes.fromhex("deadbeef")
    with pytest.raises(ValueError):
        parse_hex("abc")
