"""
Secure / non-secure world partition of the modeled SoC address map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

from socshield.core.errors import ConfigurationError
from socshield.core.models import World

ADDRESS_LIMIT = 1 << 32

# Endpoint ids
CRYPTO_TA = "crypto_ta"
CRYPTO_IP = "crypto_ip"
TARGET_IP = "target_ip"
NS_IP = "ns_ip"

# Interconnect links (tap attach points)
LINK_TA_IP = "ta_ip"
LINK_IP_TARGET = "ip_target"
LINK_NS_BUS = "ns_bus"
LINKS = (LINK_TA_IP, LINK_IP_TARGET, LINK_NS_BUS)

# Default map: non-secure peripheral low, secure IPs high.
NS_IP_BASE = 0x4000_0000
NS_IP_SIZE = 0x0001_0000
CRYPTO_IP_BASE = 0x8000_0000
CRYPTO_IP_SIZE = 0x0000_1000
TARGET_IP_BASE = 0xC000_0000
TARGET_IP_SIZE = 0x0020_0000  # 2 MiB; a 1 MiB payload fits with room for read-back


@dataclass(frozen=True)
class AddressRange:
    base: int
    size: int
    world: World
    owner: str

    def __post_init__(self) -> None:
        if self.size <= 0:
            raise ConfigurationError(f"range {self.owner} has non-positive size")
        if self.base < 0 or self.base + self.size > ADDRESS_LIMIT:
            raise ConfigurationError(f"range {self.owner} exceeds the 32-bit address space")

    @property
    def end(self) -> int:
        return self.base + self.size

    def contains(self, address: int, length: int = 1) -> bool:
        return self.base <= address and address + max(length, 1) <= self.end

    def overlaps(self, other: "AddressRange") -> bool:
        return self.base < other.end and other.base < self.end


@dataclass(frozen=True)
class WorldPartition:
    ranges: Tuple[AddressRange, ...]
    endpoints: Mapping[str, World] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ordered = sorted(self.ranges, key=lambda item: item.base)
        for left, right in zip(ordered, ordered[1:]):
            if left.overlaps(right):
                raise ConfigurationError(
                    f"ranges {left.owner} [0x{left.base:08x}, 0x{left.end:08x}) and "
                    f"{right.owner} [0x{right.base:08x}, 0x{right.end:08x}) overlap"
                )
        for item in self.ranges:
            world = self.endpoints.get(item.owner)
            if world is None:
                raise ConfigurationError(f"range owner {item.owner} has no world assignment")
            if world is not item.world:
                raise ConfigurationError(
                    f"range of {item.owner} is {item.world.value} but the endpoint is {world.value}"
                )
        object.__setattr__(self, "ranges", tuple(ordered))

    @classmethod
    def default(cls) -> "WorldPartition":
        return cls(
            ranges=(
                AddressRange(NS_IP_BASE, NS_IP_SIZE, World.NON_SECURE, NS_IP),
                AddressRange(CRYPTO_IP_BASE, CRYPTO_IP_SIZE, World.SECURE, CRYPTO_IP),
                AddressRange(TARGET_IP_BASE, TARGET_IP_SIZE, World.SECURE, TARGET_IP),
            ),
            endpoints={
                CRYPTO_TA: World.SECURE,
                CRYPTO_IP: World.SECURE,
                TARGET_IP: World.SECURE,
                NS_IP: World.NON_SECURE,
            },
        )

    @property
    def secure_ranges(self) -> Tuple[AddressRange, ...]:
        return tuple(item for item in self.ranges if item.world is World.SECURE)

    @property
    def nonsecure_ranges(self) -> Tuple[AddressRange, ...]:
        return tuple(item for item in self.ranges if item.world is World.NON_SECURE)

    def range_of(self, address: int) -> Optional[AddressRange]:
        for item in self.ranges:
            if item.contains(address):
                return item
        return None

    def range_for(self, owner: str) -> AddressRange:
        for item in self.ranges:
            if item.owner == owner:
                return item
        raise ConfigurationError(f"no address range owned by {owner}")

    def world_of(self, address: int) -> Optional[World]:
        item = self.range_of(address)
        return item.world if item else None

    def world_of_endpoint(self, endpoint: str) -> World:
        # Unknown originators are treated as non-secure.
        return self.endpoints.get(endpoint, World.NON_SECURE)

    def is_secure_span(self, address: int, length: int, owner: Optional[str] = None) -> bool:
        """True if [address, address+length) lies in one secure range (of `owner`)."""
        item = self.range_of(address)
        if item is None or item.world is not World.SECURE:
            return False
        if owner is not None and item.owner != owner:
            return False
        return item.contains(address, length)

    def to_payload(self) -> Dict[str, object]:
        return {
            "ranges": [
                {
                    "owner": item.owner,
                    "base": f"0x{item.base:08x}",
                    "size": item.size,
                    "world": item.world.value,
                }
                for item in self.ranges
            ],
            "endpoints": {name: world.value for name, world in self.endpoints.items()},
        }
