from typing import Optional

from socshield.core.errors import ModeError
from socshield.core.models import CipherKind

from .base import StreamCipher, keystream_xor
from .grain128a import (
    Grain128a,
    grain_init,
    grain_load,
    grain_mac_finalize,
    grain_step,
)
from .trivium import Trivium, trivium_init, trivium_load, trivium_step

__all__ = [
    "StreamCipher",
    "Trivium",
    "Grain128a",
    "new_cipher",
    "keystream_xor",
    "trivium_load",
    "trivium_init",
    "trivium_step",
    "grain_load",
    "grain_init",
    "grain_step",
    "grain_mac_finalize",
]


def new_cipher(
    kind: CipherKind, key: bytes, iv: bytes, tag_bits: Optional[int] = None
) -> StreamCipher:
    """Load a cipher of the given kind. Authenticated Grain defaults to a 32-bit tag."""
    kind = CipherKind(kind)
    if tag_bits is not None and not kind.authenticated:
        raise ModeError(f"{kind.value} takes no tag length")
    if kind is CipherKind.TRIVIUM:
        return Trivium(key, iv)
    if kind is CipherKind.GRAIN128A_AUTH:
        return Grain128a(key, iv, tag_bits=32 if tag_bits is None else tag_bits)
    return Grain128a(key, iv)
