import pytest

from socshield.core.errors import (
    AuthenticationError,
    DeliveryError,
    EmptyTapLogError,
    ModeError,
    SessionExhaustedError,
    UnknownAttachPointError,
)
from socshield.core.models import BusTransaction, CipherKind, TxnKind
from socshield.soc import (
    TapKind,
    TapLog,
    TrojanTap,
    attach_tap,
    build_soc,
    leakage_report,
    ns_access,
    ta_read,
    ta_send,
)
from socshield.soc.bus import Response
from socshield.soc.crypto_ip import DATA_IN, IpStatus, _status_for
from socshield.soc.partition import (
    CRYPTO_IP_BASE,
    LINK_IP_TARGET,
    LINKS,
    LINK_NS_BUS,
    LINK_TA_IP,
    TARGET_IP_BASE,
)

pytestmark = pytest.mark.integration


def _attach(sim, tap):
    attach_tap(sim, tap)
    return tap


def _eavesdrop(sim, link=LINK_TA_IP, name="fifo"):
    return _attach(sim, TrojanTap(kind=TapKind.EAVESDROP_FIFO, link=link, name=name))


def test_baseline_channel_leaks_everything(random_bytes):
    sim = build_soc(encryption=False)
    tap = _eavesdrop(sim)
    message = random_bytes(2048)
    assert ta_send(sim, message).delivered
    report = leakage_report(sim, tap, message)
    assert report.exact_match
    assert report.matching_byte_fraction == 1.0
    assert report.frames == 1
    assert report.leaked_windows == 2048 - 8 + 1


def test_encrypted_channel_leaks_no_windows(random_bytes):
    sim = build_soc(cipher=CipherKind.TRIVIUM, radix=32)
    tap = _eavesdrop(sim)
    message = random_bytes(64 * 1024)
    assert ta_send(sim, message).delivered
    report = leakage_report(sim, tap, message)
    assert not report.exact_match
    assert report.observed_bytes == len(message)
    assert report.leaked_windows == 0
    assert report.matching_byte_fraction < 0.01


@pytest.mark.parametrize("cipher", [CipherKind.TRIVIUM, CipherKind.GRAIN128A_AUTH])
def test_all_zero_plaintext_looks_balanced(cipher):
    sim = build_soc(cipher=cipher, radix=16)
    tap = _eavesdrop(sim)
    zeros = bytes(64 * 1024)
    ta_send(sim, zeros)
    assert leakage_report(sim, tap, zeros).monobit_statistic < 0.01

    baseline = build_soc(encryption=False)
    clear_tap = _eavesdrop(baseline)
    ta_send(baseline, zeros)
    assert leakage_report(baseline, clear_tap, zeros).monobit_statistic == 0.5


def test_read_back_frames_are_reconstructed(random_bytes):
    sim = build_soc(encryption=False)
    message = random_bytes(64)
    ta_send(sim, message)
    tap = _eavesdrop(sim)
    ta_read(sim, TARGET_IP_BASE, 64)
    report = leakage_report(sim, tap, message)
    assert report.frames == 1
    assert report.exact_match


def test_two_taps_on_one_link_see_the_same_stream(random_bytes):
    sim = build_soc()
    first = _eavesdrop(sim, name="first")
    second = _eavesdrop(sim, name="second")
    ta_send(sim, random_bytes(100))
    assert len(first.log) > 0
    assert first.log == second.log
    assert first.attached_at == second.attached_at == 0


def test_tap_records_in_cycle_order(random_bytes):
    sim = build_soc()
    tap = _eavesdrop(sim, link=LINK_IP_TARGET)
    ta_send(sim, random_bytes(32))
    cycles = [cycle for cycle, _ in tap.log]
    assert cycles == sorted(cycles)
    assert {txn.originator for _, txn in tap.log} == {"crypto_ip"}
    log = TapLog()
    log.append(5, BusTransaction(TxnKind.READ, 0, "x"))
    with pytest.raises(ValueError):
        log.append(4, BusTransaction(TxnKind.READ, 0, "x"))


def test_ns_bit_flip_always_rejected_with_checks_on(random_bytes):
    sim = build_soc()
    tap = _attach(sim, TrojanTap(kind=TapKind.NS_BIT_FLIP, link=LINK_TA_IP))
    report = ta_send(sim, random_bytes(40))
    assert not report.delivered
    assert report.status == "BUS_SLVERR"
    assert tap.hits > 0
    assert len(sim.interconnect.violations) == tap.hits
    assert sim.target.peek(TARGET_IP_BASE, 40) == bytes(40)
    with pytest.raises(DeliveryError):
        ta_read(sim, TARGET_IP_BASE, 4)


def test_ns_bit_flip_on_non_secure_bus():
    for checks in (True, False):
        sim = build_soc(trustzone_checks=checks)
        ta_send(sim, b"\x01\x02\x03\x04")
        tap = _attach(sim, TrojanTap(kind=TapKind.NS_BIT_FLIP, link=LINK_NS_BUS))
        responses = [ns_access(sim, TARGET_IP_BASE + 4 * i) for i in range(16)]
        assert tap.hits == 16
        if checks:
            assert all(r.response is Response.SLVERR for r in responses)
        else:
            assert all(r.ok for r in responses)
            assert responses[0].txn.data == 0x01020304


def test_ns_bit_flip_exposes_target_when_checks_are_off(random_bytes):
    sim = build_soc(trustzone_checks=False)
    attach_tap(sim, TrojanTap(kind=TapKind.NS_BIT_FLIP, link=LINK_TA_IP))
    message = random_bytes(16)
    assert ta_send(sim, message).delivered
    assert sim.target.peek(TARGET_IP_BASE, 16) == message


def _payload_flip_tap():
    # Skips the four words carrying the frame header; the fifth holds payload bytes 1..4.
    return TrojanTap(
        kind=TapKind.DATA_FLIP,
        link=LINK_TA_IP,
        address_range=(CRYPTO_IP_BASE + DATA_IN, CRYPTO_IP_BASE + DATA_IN + 4),
        skip=4,
        max_hits=1,
    )


def test_data_flip_detected_with_mac(random_bytes):
    sim = build_soc(cipher=CipherKind.GRAIN128A_AUTH, radix=32)
    tap = _attach(sim, _payload_flip_tap())
    report = ta_send(sim, random_bytes(32))
    assert tap.hits == 1
    assert not report.delivered
    assert report.status == "AUTH_ERROR"
    assert sim.target.peek(TARGET_IP_BASE, 32) == bytes(32)
    assert ta_send(sim, b"next frame").delivered


def test_data_flip_garbles_without_mac(random_bytes):
    sim = build_soc(cipher=CipherKind.TRIVIUM, radix=32)
    attach_tap(sim, _payload_flip_tap())
    message = random_bytes(32)
    assert ta_send(sim, message).delivered
    delivered = bytearray(sim.target.peek(TARGET_IP_BASE, 32))
    delivered[4] ^= 0x01
    assert bytes(delivered) == message


def test_counter_flip_in_flight_is_reported(random_bytes):
    # Bit 15 of the first header word is the top bit of the 64-bit counter.
    sim = build_soc(cipher=CipherKind.GRAIN128A_AUTH, radix=32)
    tap = _attach(
        sim,
        TrojanTap(
            kind=TapKind.DATA_FLIP,
            link=LINK_TA_IP,
            address_range=(CRYPTO_IP_BASE + DATA_IN, CRYPTO_IP_BASE + DATA_IN + 4),
            flip_mask=0x8000,
            max_hits=1,
        ),
    )
    report = ta_send(sim, b"corrupted in flight")
    assert tap.hits == 1
    assert not report.delivered
    assert report.status == "FORMAT_ERROR"
    assert report.error == "FORMAT_ERROR"
    assert sim.crypto_ip.session.recv_counter == 0
    assert sim.target.peek(TARGET_IP_BASE, 19) == bytes(19)
    assert ta_send(sim, b"next frame").delivered


def test_unmapped_controller_errors_become_failed_status():
    assert _status_for(SessionExhaustedError("counter space used up")) is IpStatus.FAILED
    assert _status_for(AuthenticationError("bad tag")) is IpStatus.AUTH_ERROR


def _run_workload(with_taps, payloads):
    sim = build_soc(cipher=CipherKind.GRAIN128A_AUTH, radix=16, seed=11)
    if with_taps:
        for link in LINKS:
            _eavesdrop(sim, link=link, name=f"snoop_{link}")
    reports = [ta_send(sim, payload) for payload in payloads]
    read = ta_read(sim, TARGET_IP_BASE, 48)
    probes = [ns_access(sim, TARGET_IP_BASE + 4 * i) for i in range(4)]
    return (
        [r.to_payload() for r in reports],
        read.data,
        read.report.to_payload(),
        [(p.response, p.txn) for p in probes],
        [record.to_row() for record in sim.trace],
        sim.target.peek(TARGET_IP_BASE, 48),
        sim.cycle,
    )


def test_eavesdrop_taps_do_not_change_outcomes(random_bytes):
    payloads = [random_bytes(size) for size in (48, 1, 33, 20)]
    assert _run_workload(False, payloads) == _run_workload(True, payloads)


def test_leakage_report_errors():
    sim = build_soc()
    tap = _eavesdrop(sim)
    with pytest.raises(EmptyTapLogError):
        leakage_report(sim, tap, b"x")
    flipper = _attach(sim, TrojanTap(kind=TapKind.NS_BIT_FLIP, link=LINK_NS_BUS))
    with pytest.raises(ModeError):
        leakage_report(sim, flipper, b"x")


def test_unknown_attach_point():
    sim = build_soc()
    with pytest.raises(UnknownAttachPointError, match="links are"):
        attach_tap(sim, TrojanTap(kind=TapKind.EAVESDROP_FIFO, link="axi_hp0"))
