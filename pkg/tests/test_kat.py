import pytest

from socshield.bench.kat import kat_check
from socshield.cipher.kat import evaluate_vector, load_kat_file, parse_kat_line, parse_kat_text
from socshield.constants import BUNDLED_KAT_FILE
from socshield.core.errors import KatParseError
from socshield.core.models import CipherKind, Radix

LINE = (
    "cipher=trivium radix=32 key=80000000000000000000 iv=00000000000000000000 "
    "offset=0 keystream=38eb86ff730d7a9c"
)


def test_bundled_vectors_pass():
    vectors = load_kat_file(BUNDLED_KAT_FILE)
    assert len(vectors) >= 30
    assert {v.cipher for v in vectors} == set(CipherKind)
    failed = [v.line_no for v in vectors if not evaluate_vector(v).passed]
    assert failed == []


def test_parse_line():
    vector = parse_kat_line(LINE, 3)
    assert vector.cipher is CipherKind.TRIVIUM
    assert vector.radix is Radix.R32
    assert vector.keystream == bytes.fromhex("38eb86ff730d7a9c")
    assert vector.line_no == 3
    assert parse_kat_line(vector.to_line()) == parse_kat_line(LINE)


def test_offset_vector():
    vector = parse_kat_line(
        "cipher=grain128a radix=8 key=00000000000000000000000000000000 "
        "iv=000000000000000000000000 offset=8 keystream=207f22"
    )
    assert evaluate_vector(vector).passed


def test_flipped_digit_fails():
    vector = parse_kat_line(LINE.replace("38eb", "39eb"))
    result = evaluate_vector(vector)
    assert not result.passed
    assert result.actual == bytes.fromhex("38eb86ff730d7a9c")


@pytest.mark.parametrize(
    "text,line_no",
    [
        ("\n\n" + LINE.replace("radix=32", "radix=7"), 3),
        (LINE.replace("offset=0", "offset=4"), 1),
        (LINE.replace("cipher=trivium", "cipher=rc4"), 1),
        (LINE + " extra=1", 1),
        (LINE.replace(" offset=0", ""), 1),
        ("# header\n" + LINE.replace("keystream=38", "keystream=3"), 2),
        (LINE.replace("offset=0", "offset=0 offset=8"), 1),
    ],
)
def test_malformed_lines_report_line_number(text, line_no):
    with pytest.raises(KatParseError) as excinfo:
        parse_kat_text(text)
    assert excinfo.value.line_no == line_no
    assert f"line {line_no}" in str(excinfo.value)


def test_wrong_key_size_is_a_parse_error():
    vector = parse_kat_line(LINE.replace("key=8000000000", "key=80000000"), 4)
    with pytest.raises(KatParseError):
        evaluate_vector(vector)


def test_kat_check_bundled_and_env_override(tmp_path, monkeypatch):
    assert kat_check().passed
    custom = tmp_path / "vectors.txt"
    custom.write_text(LINE.replace("38eb", "39eb") + "\n", encoding="utf-8")
    monkeypatch.setenv("SOCSHIELD_KAT_FILE", str(custom))
    report = kat_check()
    assert not report.passed
    assert len(report.failures) == 1


def test_kat_check_empty_file(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing here\n", encoding="utf-8")
    report = kat_check(empty)
    assert report.passed
    assert report.results == []
