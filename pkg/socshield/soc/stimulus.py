"""
Line-oriented stimulus scripts and trace export.

    send <hex payload> [<addr>]
    read <addr> <len>
    attach <tap kind> <link>
    ns read <addr> | ns write <addr> <data>
    set cipher <name> radix <r> [auth <w>]
    set encryption on|off

`#` starts a comment. Numbers accept 0x-prefixed hex.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Tuple, Union

import pandas as pd
from loguru import logger

from socshield.constants import RADIX_SET
from socshield.core.bits import parse_hex
from socshield.core.errors import ScriptParseError, SocShieldError
from socshield.core.models import CipherKind, TxnKind

from .partition import LINKS
from .simulator import Simulator, attach_tap, ns_access, ta_read, ta_send
from .trojan import TapKind, TrojanTap

TRACE_COLUMNS = ("cycle", "link", "address", "data", "ns_attr", "originator")


@dataclass(frozen=True)
class Command:
    line_no: int
    verb: str
    args: Tuple[Any, ...] = ()


@dataclass
class ScriptOutcome:
    command: Command
    result: Any = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _int(token: str, line_no: int) -> int:
    try:
        return int(token, 0)
    except ValueError:
        raise ScriptParseError(f"expected a number, got {token!r}", line_no) from None


def _parse_set(tokens: List[str], line_no: int) -> Command:
    if len(tokens) == 3 and tokens[1] == "encryption":
        if tokens[2] not in ("on", "off"):
            raise ScriptParseError("set encryption takes on|off", line_no)
        return Command(line_no, "encryption", (tokens[2] == "on",))
    if len(tokens) in (5, 7) and tokens[1] == "cipher" and tokens[3] == "radix":
        name = tokens[2].lower()
        if name not in (CipherKind.TRIVIUM.value, CipherKind.GRAIN128A.value):
            raise ScriptParseError(f"unknown cipher {tokens[2]!r}", line_no)
        radix = _int(tokens[4], line_no)
        if radix not in RADIX_SET:
            raise ScriptParseError(f"radix must be one of {list(RADIX_SET)}", line_no)
        tag_bits = None
        kind = CipherKind(name)
        if len(tokens) == 7:
            if tokens[5] != "auth" or kind is not CipherKind.GRAIN128A:
                raise ScriptParseError("only grain128a takes 'auth <w>'", line_no)
            tag_bits = _int(tokens[6], line_no)
            if not 0 < tag_bits <= 32:
                raise ScriptParseError("tag length must be in 1..32", line_no)
            kind = CipherKind.GRAIN128A_AUTH
        return Command(line_no, "cipher", (kind, radix, tag_bits))
    raise ScriptParseError(f"malformed set command: {' '.join(tokens)}", line_no)


def parse_line(line: str, line_no: int = 0) -> Optional[Command]:
    tokens = line.split("#", 1)[0].split()
    if not tokens:
        return None
    verb = tokens[0].lower()
    if verb == "send":
        if len(tokens) > 3:
            raise ScriptParseError("send takes a hex payload and an optional address", line_no)
        try:
            payload = parse_hex(tokens[1]) if len(tokens) > 1 and tokens[1] != "-" else b""
        except ValueError:
            raise ScriptParseError(f"payload is not hex: {tokens[1]!r}", line_no) from None
        address = _int(tokens[2], line_no) if len(tokens) == 3 else None
        return Command(line_no, "send", (payload, address))
    if verb == "read":
        if len(tokens) != 3:
            raise ScriptParseError("read takes <addr> <len>", line_no)
        return Command(line_no, "read", (_int(tokens[1], line_no), _int(tokens[2], line_no)))
    if verb == "attach":
        if len(tokens) != 3:
            raise ScriptParseError("attach takes <tap kind> <link>", line_no)
        try:
            kind = TapKind(tokens[1])
        except ValueError:
            raise ScriptParseError(f"unknown tap kind {tokens[1]!r}", line_no) from None
        if tokens[2] not in LINKS:
            raise ScriptParseError(
                f"unknown link {tokens[2]!r}; links are {', '.join(LINKS)}", line_no
            )
        return Command(line_no, "attach", (kind, tokens[2]))
    if verb == "ns":
        if len(tokens) == 3 and tokens[1] == "read":
            return Command(line_no, "ns", (TxnKind.READ, _int(tokens[2], line_no), 0))
        if len(tokens) == 4 and tokens[1] == "write":
            return Command(
                line_no, "ns", (TxnKind.WRITE, _int(tokens[2], line_no), _int(tokens[3], line_no))
            )
        raise ScriptParseError("ns takes 'read <addr>' or 'write <addr> <data>'", line_no)
    if verb == "set":
        return _parse_set(tokens, line_no)
    raise ScriptParseError(f"unknown command {tokens[0]!r}", line_no)


def parse_script(text: str) -> List[Command]:
    commands = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        command = parse_line(line, line_no)
        if command is not None:
            commands.append(command)
    return commands


def _execute(sim: Simulator, command: Command) -> Any:
    verb, args = command.verb, command.args
    if verb == "send":
        return ta_send(sim, args[0], args[1])
    if verb == "read":
        return ta_read(sim, args[0], args[1])
    if verb == "attach":
        kind, link = args
        tap = TrojanTap(kind=kind, link=link, name=f"{kind.value}@{command.line_no}")
        attach_tap(sim, tap)
        return tap
    if verb == "ns":
        return ns_access(sim, args[1], args[0], args[2])
    if verb == "cipher":
        sim.configure_session(*args)
        return None
    if verb == "encryption":
        sim.set_encryption(args[0])
        return None
    raise ScriptParseError(f"unknown command {verb!r}", command.line_no)


def run_script(sim: Simulator, script: Union[str, List[Command]]) -> List[ScriptOutcome]:
    """Run every command in order. Operation failures are recorded, not raised."""
    commands = parse_script(script) if isinstance(script, str) else script
    outcomes = []
    for command in commands:
        try:
            outcomes.append(ScriptOutcome(command, _execute(sim, command)))
        except SocShieldError as exc:
            logger.warning("line {}: {} failed: {}", command.line_no, command.verb, exc)
            outcomes.append(ScriptOutcome(command, error=f"{type(exc).__name__}: {exc}"))
    return outcomes


def trace_frame(sim: Simulator) -> pd.DataFrame:
    rows = [record.to_row() for record in sim.trace]
    return pd.DataFrame(rows, columns=list(TRACE_COLUMNS))


def write_trace_csv(sim: Simulator, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    trace_frame(sim).to_csv(path, index=False)
    logger.info("Wrote {} trace rows to {}", len(sim.trace), path)
    return path
