import pytest
from pydantic import ValidationError

from socshield.core.errors import PartitionViolationError
from socshield.core.models import CipherKind, TxnKind
from socshield.soc import Response, SimulatorSettings, build_soc, ns_access, ta_read, ta_send
from socshield.soc.crypto_ip import CTRL, STATUS, IpStatus
from socshield.soc.partition import CRYPTO_IP_BASE, NS_IP_BASE, TARGET_IP_BASE

pytestmark = pytest.mark.integration


@pytest.mark.parametrize(
    "cipher,radix,init_steps",
    [
        (CipherKind.TRIVIUM, 32, 36),
        (CipherKind.TRIVIUM, 8, 144),
        (CipherKind.GRAIN128A, 32, 8),
        (CipherKind.GRAIN128A, 1, 256),
    ],
)
def test_delivery_and_init_steps(cipher, radix, init_steps, random_bytes):
    sim = build_soc(cipher=cipher, radix=radix)
    message = random_bytes(100)
    report = ta_send(sim, message)
    assert report.delivered, report.error
    assert report.init_steps == report.ta_init_steps == init_steps
    assert report.keystream_steps == -(-100 * 8 // radix)
    assert report.frame_words == -(-(15 + 100) // 4)
    assert report.total_cycles == report.transfer_cycles + report.cipher_cycles
    assert sim.target.peek(TARGET_IP_BASE, 100) == message


def test_authenticated_delivery_counts_preload(random_bytes):
    sim = build_soc(cipher=CipherKind.GRAIN128A_AUTH, radix=32, tag_bits=32)
    report = ta_send(sim, random_bytes(64))
    assert report.delivered
    assert (report.init_steps, report.preload_steps, report.keystream_steps) == (8, 2, 16)


def test_unaligned_delivery_and_read_back(sim, random_bytes):
    message = random_bytes(23)
    assert ta_send(sim, message, TARGET_IP_BASE + 0x101).delivered
    assert sim.target.peek(TARGET_IP_BASE + 0x100, 1) == b"\x00"
    result = ta_read(sim, TARGET_IP_BASE + 0x101, 23)
    assert result.data == message
    assert result.report.msg_counter == 0
    assert ta_read(sim, TARGET_IP_BASE, 0).data == b""


def test_send_outside_target_is_refused(sim):
    report = ta_send(sim, b"data", NS_IP_BASE)
    assert not report.delivered
    assert report.status == "PARTITION_VIOLATION"
    assert sim.ns_ip.peek(NS_IP_BASE, 4) == bytes(4)


def test_read_outside_target_raises(sim):
    with pytest.raises(PartitionViolationError):
        ta_read(sim, NS_IP_BASE, 16)
    with pytest.raises(PartitionViolationError):
        ta_read(sim, CRYPTO_IP_BASE, 4)


def test_non_secure_accesses(sim):
    ta_send(sim, b"\xde\xad\xbe\xef")
    response = ns_access(sim, TARGET_IP_BASE)
    assert response.response is Response.SLVERR
    assert response.txn.data == 0
    assert ns_access(sim, CRYPTO_IP_BASE, TxnKind.WRITE, 1).response is Response.SLVERR
    assert len(sim.interconnect.violations) == 2
    assert ns_access(sim, NS_IP_BASE, TxnKind.WRITE, 0x1234).ok
    assert ns_access(sim, NS_IP_BASE).txn.data == 0x1234
    assert ns_access(sim, 0x0000_1000).response is Response.DECERR


def test_trustzone_checks_off_exposes_secure_memory():
    sim = build_soc(trustzone_checks=False)
    ta_send(sim, b"\xde\xad\xbe\xef")
    response = ns_access(sim, TARGET_IP_BASE)
    assert response.ok
    assert response.txn.data == 0xDEADBEEF


def test_deterministic_trace(random_bytes):
    message = random_bytes(40)

    def run():
        sim = build_soc(seed=3)
        ta_send(sim, message)
        ta_read(sim, TARGET_IP_BASE, 40)
        ns_access(sim, TARGET_IP_BASE)
        return [record.to_row() for record in sim.trace], sim.cycle

    assert run() == run()


def test_trace_cycles_are_strictly_increasing(sim):
    report = ta_send(sim, b"x" * 10)
    cycles = [record.cycle for record in sim.trace]
    assert cycles == sorted(set(cycles))
    assert sim.cycle - len(cycles) == report.cipher_cycles


def test_encryption_does_not_change_delivered_data(random_bytes):
    message = random_bytes(4096)
    encrypted = build_soc(cipher=CipherKind.GRAIN128A_AUTH, radix=16)
    plain = build_soc(encryption=False)
    assert ta_send(encrypted, message).delivered
    report = ta_send(plain, message)
    assert report.delivered and report.cipher_cycles == 0
    assert encrypted.target.peek(TARGET_IP_BASE, 4096) == plain.target.peek(TARGET_IP_BASE, 4096)


@pytest.mark.slow
def test_one_megabyte_delivery(random_bytes):
    message = random_bytes(1 << 20)
    for cipher in (CipherKind.TRIVIUM, CipherKind.GRAIN128A):
        sim = build_soc(cipher=cipher, radix=32, record_trace=False)
        assert ta_send(sim, message).delivered
        assert sim.target.peek(TARGET_IP_BASE, 1 << 20) == message
        assert ta_read(sim, TARGET_IP_BASE, 1 << 20).data == message


def test_reconfigure_session(sim):
    first_id = sim.settings.session_id
    sim.configure_session(CipherKind.GRAIN128A_AUTH, 8)
    assert sim.settings.tag_bits == 32
    assert sim.settings.session_id == first_id + 1
    report = ta_send(sim, b"after rekey")
    assert report.delivered and report.msg_counter == 0
    assert report.init_steps == 32
    sim.set_encryption(False)
    assert ta_send(sim, b"clear").cipher_cycles == 0


def test_settings_validation():
    with pytest.raises(ValidationError):
        SimulatorSettings(radix=3)
    with pytest.raises(ValidationError):
        SimulatorSettings(cipher=CipherKind.TRIVIUM, tag_bits=8)
    with pytest.raises(ValidationError):
        build_soc(session_id=1 << 16)


def test_ip_reports_bad_command(sim):
    sim.ta.write_reg(CTRL, 0x7F)
    assert sim.ta.read_reg(STATUS).txn.data == IpStatus.BAD_COMMAND
    assert ta_send(sim, b"recovers").delivered
