"""
Known-answer vector files.

One vector per line:

    cipher=<name> radix=<r> key=<hex> iv=<hex> offset=<bit index> keystream=<hex>

Blank lines and `#` comments are ignored. Hex strings use the cipher's own byte
packing (LSB-first for Trivium, MSB-first for Grain-128a); `offset` is the index
of the first expected keystream bit and must be byte-aligned.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Union

from socshield.core.errors import KatParseError, ParameterSizeError
from socshield.core.models import CipherKind, Radix, as_radix

from . import new_cipher

_FIELDS = ("cipher", "radix", "key", "iv", "offset", "keystream")


@dataclass(frozen=True)
class KatVector:
    cipher: CipherKind
    radix: Radix
    key: bytes
    iv: bytes
    offset: int
    keystream: bytes
    line_no: int = 0

    def to_line(self) -> str:
        return (
            f"cipher={self.cipher.value} radix={int(self.radix)} key={self.key.hex()} "
            f"iv={self.iv.hex()} offset={self.offset} keystream={self.keystream.hex()}"
        )


@dataclass(frozen=True)
class KatResult:
    vector: KatVector
    passed: bool
    actual: bytes

    def to_payload(self) -> Dict[str, object]:
        return {
            "line": self.vector.line_no,
            "cipher": self.vector.cipher.value,
            "radix": int(self.vector.radix),
            "passed": self.passed,
            "expected": self.vector.keystream.hex(),
            "actual": self.actual.hex(),
        }


def _hex_field(fields: Dict[str, str], name: str, line_no: int) -> bytes:
    try:
        return bytes.fromhex(fields[name])
    except ValueError:
        raise KatParseError(f"{name} is not byte-aligned hex", line_no) from None


def parse_kat_line(line: str, line_no: int = 0) -> KatVector:
    fields: Dict[str, str] = {}
    for token in line.split():
        name, sep, value = token.partition("=")
        if not sep or not value:
            raise KatParseError(f"expected name=value, got {token!r}", line_no)
        if name not in _FIELDS:
            raise KatParseError(f"unknown field {name!r}", line_no)
        if name in fields:
            raise KatParseError(f"duplicate field {name!r}", line_no)
        fields[name] = value
    missing = [name for name in _FIELDS if name not in fields]
    if missing:
        raise KatParseError(f"missing field(s) {', '.join(missing)}", line_no)

    try:
        cipher = CipherKind(fields["cipher"].lower())
    except ValueError:
        raise KatParseError(f"unknown cipher {fields['cipher']!r}", line_no) from None
    try:
        radix = as_radix(fields["radix"])
    except ParameterSizeError as exc:
        raise KatParseError(str(exc), line_no) from None
    if not fields["offset"].isdigit():
        raise KatParseError("offset must be a non-negative integer", line_no)
    offset = int(fields["offset"])
    if offset % 8:
        raise KatParseError("offset must be a multiple of 8 bits", line_no)

    return KatVector(
        cipher=cipher,
        radix=radix,
        key=_hex_field(fields, "key", line_no),
        iv=_hex_field(fields, "iv", line_no),
        offset=offset,
        keystream=_hex_field(fields, "keystream", line_no),
        line_no=line_no,
    )


def parse_kat_text(text: str) -> List[KatVector]:
    vectors = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            vectors.append(parse_kat_line(line, line_no))
    return vectors


def load_kat_file(path: Union[str, Path]) -> List[KatVector]:
    return parse_kat_text(Path(path).read_text(encoding="utf-8"))


def evaluate_vector(vector: KatVector) -> KatResult:
    try:
        cipher = new_cipher(vector.cipher, vector.key, vector.iv)
    except ParameterSizeError as exc:
        raise KatParseError(str(exc), vector.line_no) from None
    cipher.initialize(vector.radix)
    skip = vector.offset // 8
    stream = cipher.keystream_bytes(skip + len(vector.keystream), vector.radix)
    actual = stream[skip:]
    return KatResult(vector=vector, passed=actual == vector.keystream, actual=actual)
