from .bus import BusResponse, Interconnect, Response
from .partition import LINKS, AddressRange, WorldPartition
from .simulator import (
    DeliveryReport,
    ReadResult,
    Simulator,
    SimulatorSettings,
    attach_tap,
    build_soc,
    ns_access,
    ta_read,
    ta_send,
)
from .stimulus import parse_script, run_script, write_trace_csv
from .trojan import LeakageReport, TapKind, TapLog, TrojanTap, leakage_report

__all__ = [
    "AddressRange",
    "BusResponse",
    "DeliveryReport",
    "Interconnect",
    "LINKS",
    "LeakageReport",
    "ReadResult",
    "Response",
    "Simulator",
    "SimulatorSettings",
    "TapKind",
    "TapLog",
    "TrojanTap",
    "WorldPartition",
    "attach_tap",
    "build_soc",
    "leakage_report",
    "ns_access",
    "parse_script",
    "run_script",
    "ta_read",
    "ta_send",
    "write_trace_csv",
]
