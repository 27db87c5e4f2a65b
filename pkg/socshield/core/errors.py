"""Exception hierarchy shared by the cipher, channel, simulator and bench layers."""

from typing import Optional


class SocShieldError(Exception):
    """Base class for every error raised by socshield."""


# Cipher core


class ParameterSizeError(SocShieldError, ValueError):
    """Key, IV, radix or tag length outside the supported set."""


class SequencingError(SocShieldError, RuntimeError):
    """Operation called in the wrong cipher or MAC phase."""


class KeystreamExhaustedError(SocShieldError, RuntimeError):
    """The 2^32-bit keystream cap for one (key, IV) pair was reached."""


class ModeError(SocShieldError, ValueError):
    """Operation not available in the configured mode."""


class LengthMismatchError(SocShieldError, ValueError):
    """Keystream and data chunks differ in length."""


# Secure channel


class SessionExhaustedError(SocShieldError, RuntimeError):
    """Message counter reached its limit; the session must be rekeyed."""


class ReplayError(SocShieldError):
    """Frame counter is below the receiver's next expected counter."""

    def __init__(self, counter: int, expected: int) -> None:
        super().__init__(f"frame counter {counter} below expected {expected}")
        self.counter = counter
        self.expected = expected


class AuthenticationError(SocShieldError):
    """MAC tag mismatch or missing tag. No plaintext is released."""


class FrameFormatError(SocShieldError, ValueError):
    """Malformed frame header or declared length mismatch."""


class PayloadTooLargeError(SocShieldError, ValueError):
    """Payload exceeds the per-frame maximum."""


class RoutingError(SocShieldError):
    """Frame addressed to the wrong session or travelling the wrong way."""


# SoC simulator


class ConfigurationError(SocShieldError, ValueError):
    """Invalid world partition or simulator setting."""


class PartitionViolationError(SocShieldError):
    """Access would cross into or out of the secure world."""

    def __init__(self, address: int, length: int = 0, detail: str = "") -> None:
        message = f"access to 0x{address:08x} (+{length}) violates the world partition"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.address = address
        self.length = length


class UnknownAttachPointError(SocShieldError, KeyError):
    """Tap attach point does not name an interconnect link."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown attach point"


class EmptyTapLogError(SocShieldError):
    """Leakage analysis requested on a tap that recorded nothing."""


class DeliveryError(SocShieldError):
    """The crypto IP reported a failure status for a command."""

    def __init__(self, status: str, detail: str = "") -> None:
        super().__init__(f"{status}: {detail}" if detail else status)
        self.status = status


# Parsing (KAT files, stimulus scripts)


class ParseError(SocShieldError, ValueError):
    def __init__(self, message: str, line_no: Optional[int] = None) -> None:
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class KatParseError(ParseError):
    """Malformed line in a known-answer vector file."""


class ScriptParseError(ParseError):
    """Malformed line in a simulator stimulus script."""


# Benchmark


class CoverageError(SocShieldError, ValueError):
    """Benchmark results do not cover the same radix set for both ciphers."""


class ResultsFormatError(ParseError):
    """Benchmark results CSV does not have the expected columns."""
