import pandas as pd
import pytest

from socshield.soc.cli import main

pytestmark = pytest.mark.integration


def _script(tmp_path, text):
    path = tmp_path / "stimulus.txt"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_run_writes_trace(tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    script = _script(tmp_path, "attach eavesdrop_fifo ta_ip\nsend 00112233\nread 0xC0000000 4\n")
    assert main(["run", "--script", script, "--trace", str(trace), "--cipher", "grain128a-auth"]) == 0
    assert "✓" in capsys.readouterr().out
    assert len(pd.read_csv(trace)) > 0


def test_failed_commands_exit_one(tmp_path):
    script = _script(tmp_path, "read 0x40000000 4\n")
    assert main(["run", "--script", script]) == 1


def test_ns_probe_is_not_a_failure(tmp_path):
    script = _script(tmp_path, "ns read 0xC0000000\n")
    assert main(["run", "--script", script, "--no-trustzone"]) == 0


@pytest.mark.parametrize(
    "text,extra",
    [
        ("send 00\nbogus\n", []),
        ("send 00\n", ["--radix", "3"]),
        ("send 00\n", ["--cipher", "trivium", "--tag-bits", "8"]),
    ],
)
def test_usage_errors_exit_two(tmp_path, text, extra):
    assert main(["run", "--script", _script(tmp_path, text)] + extra) == 2


def test_missing_script(tmp_path):
    assert main(["run", "--script", str(tmp_path / "nope.txt")]) == 2
