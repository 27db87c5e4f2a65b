"""
Single-beat, in-order interconnect with a global cycle counter.

Every transaction crosses one named link, costs one cycle, and is routed by
address through the world partition. Secure slaves apply the TrustZone
predicate: a request is refused when it carries the non-secure attribute or
when its originator belongs to the non-secure world.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, List, Protocol

from loguru import logger

from socshield.core.errors import UnknownAttachPointError
from socshield.core.models import BusTransaction, TraceRecord, TxnKind, World

from .partition import LINKS, WorldPartition
from .trojan import TrojanTap

class Response(str, Enum):
    OKAY = "okay"
    SLVERR = "slverr"
    DECERR = "decerr"


@dataclass(frozen=True)
class BusResponse:
    txn: BusTransaction
    response: Response
    cycle: int

    @property
    def ok(self) -> bool:
        return self.response is Response.OKAY


class Slave(Protocol):
    def read(self, address: int) -> int: ...

    def write(self, address: int, data: int, strobe: int = 0xF) -> None: ...


class Pollable(Protocol):
    def poll(self) -> None: ...


class Interconnect:
    def __init__(
        self,
        partition: WorldPartition,
        *,
        trustzone_checks: bool = True,
        record_trace: bool = True,
    ) -> None:
        self.partition = partition
        self.trustzone_checks = trustzone_checks
        self.record_trace = record_trace
        self.cycle = 0
        self.beats = 0
        self.slaves: Dict[str, Slave] = {}
        self._pollers: List[Pollable] = []
        self.taps: Dict[str, List[TrojanTap]] = {link: [] for link in LINKS}
        self.trace: List[TraceRecord] = []
        self.violations: List[TraceRecord] = []

    def attach_slave(self, owner: str, slave: Slave) -> None:
        self.partition.range_for(owner)
        self.slaves[owner] = slave
        if hasattr(slave, "poll"):
            self._pollers.append(slave)

    def attach_tap(self, tap: TrojanTap) -> TrojanTap:
        if tap.link not in self.taps:
            raise UnknownAttachPointError(
                f"unknown attach point {tap.link!r}; links are {', '.join(LINKS)}"
            )
        tap.attached_at = self.cycle
        self.taps[tap.link].append(tap)
        logger.info("Attached {} tap {} to {} at cycle {}", tap.kind.value, tap.name, tap.link, self.cycle)
        return tap

    def advance(self, cycles: int) -> None:
        if cycles < 0:
            raise ValueError("cannot advance by a negative cycle count")
        self.cycle += cycles

    def _secure_access_allowed(self, txn: BusTransaction) -> bool:
        if txn.ns_attr:
            return False
        return self.partition.world_of_endpoint(txn.originator) is World.SECURE

    def issue(self, link: str, txn: BusTransaction) -> BusResponse:
        if link not in self.taps:
            raise UnknownAttachPointError(f"unknown link {link!r}")
        self.cycle += 1
        self.beats += 1
        cycle = self.cycle
        taps = self.taps[link]
        for tap in taps:
            txn = tap.on_request(cycle, txn)

        target = self.partition.range_of(txn.address)
        if target is None or target.owner not in self.slaves:
            response = Response.DECERR
        elif (
            self.trustzone_checks
            and target.world is World.SECURE
            and not self._secure_access_allowed(txn)
        ):
            response = Response.SLVERR
        else:
            response = Response.OKAY
            slave = self.slaves[target.owner]
            if txn.kind is TxnKind.READ:
                txn = replace(txn, data=slave.read(txn.address) & 0xFFFF_FFFF)
            else:
                slave.write(txn.address, txn.data, txn.strobe)

        if response is not Response.OKAY and txn.kind is TxnKind.READ:
            txn = replace(txn, data=0)
        for tap in taps:
            txn = tap.on_response(cycle, txn)

        record = TraceRecord(cycle=cycle, link=link, txn=txn, response=response.value)
        if response is Response.SLVERR:
            self.violations.append(record)
            logger.warning(
                "Rejected {} by {} at 0x{:08x} (ns_attr={}) on {}",
                txn.kind.value,
                txn.originator,
                txn.address,
                txn.ns_attr,
                link,
            )
        elif response is Response.DECERR:
            logger.warning("Decode error for 0x{:08x} on {}", txn.address, link)
        if self.record_trace:
            self.trace.append(record)
        # Endpoints act on a completed beat only after it has been recorded.
        for poller in self._pollers:
            poller.poll()
        return BusResponse(txn=txn, response=response, cycle=cycle)

