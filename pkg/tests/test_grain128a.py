import pytest

from socshield.cipher import Grain128a, grain_init, grain_load, grain_mac_finalize, grain_step, new_cipher
from socshield.cipher.reference import ReferenceGrain128a
from socshield.core.errors import ModeError, ParameterSizeError, SequencingError
from socshield.core.models import CipherKind, Phase

RADICES = (1, 8, 16, 32)
ZERO_KEY = bytes(16)
ZERO_IV = bytes(12)
IV_MSB = bytes.fromhex("800000000000000000000000")
KEY = bytes.fromhex("0123456789abcdef123456789abcdef0")
IV = bytes.fromhex("0123456789abcdef12345678")

KEYSTREAM_VECTORS = [
    (
        ZERO_KEY,
        ZERO_IV,
        "c0207f221660650b6a952ae26586136fa0904140c8621cfe8660c0dec0969e94"
        "36f4ace92cf1ebb794663f17ab8341ee2c059e47a57d9950ef3cbb8bdb42bd61",
    ),
    (KEY, IV, "f88720c13f46e6a43c07eeed89161a4d"),
    (ZERO_KEY, IV_MSB, "564b362219bd90e301f259cf52bf5da9"),
]


@pytest.mark.parametrize("radix", RADICES)
@pytest.mark.parametrize("key,iv,expected", KEYSTREAM_VECTORS)
def test_known_answer(key, iv, expected, radix):
    cipher = Grain128a(key, iv)
    cipher.initialize(radix)
    expected = bytes.fromhex(expected)
    assert cipher.keystream_bytes(len(expected), radix) == expected


def test_reference_model_agrees():
    reference = ReferenceGrain128a(KEY, IV)
    assert reference.keystream_bytes(16) == bytes.fromhex("f88720c13f46e6a43c07eeed89161a4d")


@pytest.mark.parametrize("radix,steps", [(1, 256), (8, 32), (16, 16), (32, 8)])
def test_init_steps(radix, steps):
    cipher = Grain128a(ZERO_KEY, ZERO_IV)
    assert cipher.initialize(radix) == steps
    assert cipher.preload_steps == 0


@pytest.mark.parametrize("radix", RADICES)
def test_authenticated_empty_message(radix):
    cipher = Grain128a(ZERO_KEY, IV_MSB, tag_bits=32)
    cipher.initialize(radix)
    assert cipher.preload_steps == 64 // radix
    assert cipher.finalize_mac(b"") == bytes.fromhex("4ff6a6c1")
    assert cipher.phase is Phase.FINALIZED


@pytest.mark.parametrize("radix", RADICES)
def test_authenticated_zero_message(radix):
    cipher = Grain128a(ZERO_KEY, IV_MSB, tag_bits=32)
    cipher.initialize(radix)
    message = bytes(8)
    stream = cipher.keystream_bytes(8, radix)
    assert stream == bytes.fromhex("0d2b1f2ebc83da7e")
    assert cipher.finalize_mac(message) == bytes.fromhex("b3669365")


@pytest.mark.parametrize("radix", RADICES)
@pytest.mark.parametrize("tag_bits,tag", [(32, "943738f8"), (16, "38f8")])
def test_authenticated_message(radix, tag_bits, tag):
    message = bytes.fromhex("48656c6c6f2c2053")
    cipher = new_cipher(CipherKind.GRAIN128A_AUTH, KEY, IV, tag_bits=tag_bits)
    cipher.initialize(radix)
    stream = cipher.keystream_bytes(len(message), radix)
    assert stream == bytes.fromhex("61fea132979efb70")
    assert bytes(a ^ b for a, b in zip(stream, message)) == bytes.fromhex("299bcd5ef8b2db23")
    assert cipher.finalize_mac(message) == bytes.fromhex(tag)


def test_authenticated_matches_reference_model(random_bytes):
    for length in (0, 1, 5, 33):
        key, iv, message = random_bytes(16), random_bytes(12), random_bytes(length)
        for tag_bits in (32, 13):
            expected = ReferenceGrain128a(key, iv, tag_bits).encrypt(message)
            for radix in RADICES:
                cipher = Grain128a(key, iv, tag_bits=tag_bits)
                cipher.initialize(radix)
                ciphertext = cipher.apply(message, radix)
                assert (ciphertext, cipher.finalize_mac(message)) == expected


def test_tag_depends_on_every_message_bit():
    message = bytes(16)
    base = Grain128a(KEY, IV, tag_bits=32)
    base.initialize(32)
    base.keystream_bytes(len(message), 32)
    reference_tag = base.finalize_mac(message)
    for bit in range(len(message) * 8):
        flipped = bytearray(message)
        flipped[bit // 8] ^= 0x80 >> (bit % 8)
        cipher = Grain128a(KEY, IV, tag_bits=32)
        cipher.initialize(32)
        cipher.keystream_bytes(len(message), 32)
        assert cipher.finalize_mac(bytes(flipped)) != reference_tag


def test_functional_wrappers():
    state = grain_init(grain_load(KEY, IV, tag_bits=32), 8)
    state, chunk = grain_step(state, 8)
    assert chunk.producer is CipherKind.GRAIN128A_AUTH
    assert chunk.width == 8
    assert len(grain_mac_finalize(state, b"\x48")) == 4


def test_tag_length_bounds():
    with pytest.raises(ParameterSizeError):
        Grain128a(KEY, IV, tag_bits=0)
    with pytest.raises(ParameterSizeError):
        Grain128a(KEY, IV, tag_bits=33)
    with pytest.raises(ParameterSizeError):
        Grain128a(KEY, bytes(10))


def test_mac_sequencing():
    cipher = Grain128a(KEY, IV, tag_bits=32)
    with pytest.raises(SequencingError):
        cipher.finalize_mac(b"")
    cipher.initialize(16)
    cipher.keystream_bytes(2, 16)
    with pytest.raises(SequencingError):
        cipher.finalize_mac(b"\x00\x00\x00")
    cipher.finalize_mac(b"\x00\x00")
    with pytest.raises(SequencingError):
        cipher.finalize_mac(b"")
    with pytest.raises(SequencingError):
        cipher.step(16)


def test_unauthenticated_has_no_mac():
    cipher = Grain128a(KEY, IV)
    cipher.initialize(32)
    with pytest.raises(ModeError):
        cipher.finalize_mac(b"")
