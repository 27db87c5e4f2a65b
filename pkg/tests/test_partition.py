import pytest

from socshield.core.errors import ConfigurationError
from socshield.core.models import World
from socshield.soc.partition import (
    CRYPTO_IP,
    CRYPTO_IP_BASE,
    CRYPTO_TA,
    NS_IP,
    NS_IP_BASE,
    TARGET_IP,
    TARGET_IP_BASE,
    TARGET_IP_SIZE,
    AddressRange,
    WorldPartition,
)


def test_default_partition():
    partition = WorldPartition.default()
    assert [r.owner for r in partition.secure_ranges] == [CRYPTO_IP, TARGET_IP]
    assert [r.owner for r in partition.nonsecure_ranges] == [NS_IP]
    assert partition.world_of(TARGET_IP_BASE + 8) is World.SECURE
    assert partition.world_of(NS_IP_BASE) is World.NON_SECURE
    assert partition.world_of(0x1000) is None
    assert partition.range_for(CRYPTO_IP).base == CRYPTO_IP_BASE


def test_endpoint_worlds():
    partition = WorldPartition.default()
    assert partition.world_of_endpoint(CRYPTO_TA) is World.SECURE
    assert partition.world_of_endpoint(NS_IP) is World.NON_SECURE
    assert partition.world_of_endpoint("dma_engine") is World.NON_SECURE


def test_is_secure_span():
    partition = WorldPartition.default()
    assert partition.is_secure_span(TARGET_IP_BASE, TARGET_IP_SIZE)
    assert partition.is_secure_span(TARGET_IP_BASE, 16, owner=TARGET_IP)
    assert not partition.is_secure_span(TARGET_IP_BASE, 16, owner=CRYPTO_IP)
    assert not partition.is_secure_span(TARGET_IP_BASE + TARGET_IP_SIZE - 4, 8)
    assert not partition.is_secure_span(NS_IP_BASE, 4)


def _ranges(*items):
    return tuple(AddressRange(base, size, world, owner) for base, size, world, owner in items)


def test_overlapping_ranges_rejected():
    with pytest.raises(ConfigurationError, match="overlap"):
        WorldPartition(
            _ranges(
                (0x1000, 0x1000, World.SECURE, "a"),
                (0x1800, 0x1000, World.NON_SECURE, "b"),
            ),
            {"a": World.SECURE, "b": World.NON_SECURE},
        )


def test_owner_world_must_match():
    with pytest.raises(ConfigurationError):
        WorldPartition(_ranges((0x1000, 0x100, World.SECURE, "a")), {"a": World.NON_SECURE})
    with pytest.raises(ConfigurationError):
        WorldPartition(_ranges((0x1000, 0x100, World.SECURE, "a")), {})


def test_address_range_bounds():
    with pytest.raises(ConfigurationError):
        AddressRange(0x1000, 0, World.SECURE, "a")
    with pytest.raises(ConfigurationError):
        AddressRange(0xFFFF_FF00, 0x200, World.SECURE, "a")
    item = AddressRange(0x1000, 0x100, World.SECURE, "a")
    assert item.contains(0x10FF) and not item.contains(0x10FF, 2)


def test_payload_is_sorted_by_base():
    payload = WorldPartition.default().to_payload()
    assert [r["owner"] for r in payload["ranges"]] == [NS_IP, CRYPTO_IP, TARGET_IP]
    assert payload["endpoints"][CRYPTO_TA] == "secure"
