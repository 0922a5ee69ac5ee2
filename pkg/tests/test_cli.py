import json
import subprocess
import sys

import pytest

from scrollinst.cli import parse_divisor, parse_range, run
from scrollinst.chow import DivisorClass
from scrollinst.errors import DomainError


def test_parse_divisor():
    assert parse_divisor("2H-3F") == DivisorClass(2, -3)
    assert parse_divisor("-H") == DivisorClass(-1, 0)
    assert parse_divisor("0") == DivisorClass(0, 0)
    with pytest.raises(DomainError):
        parse_divisor("2G")


def test_parse_range():
    assert list(parse_range("-1..2")) == [-1, 0, 1, 2]
    with pytest.raises(DomainError):
        parse_range("3..1")


def test_coh_example():
    code, text = run(["--json", "coh", "1,1,2", "--sheaf", "Omega(2H)"])
    assert code == 0
    assert "11" in text


def test_instanton_monad_example():
    code, text = run(["instanton", "1,1,1", "1", "0", "--monad", "mon1"])
    assert code == 0 and "O^2" in text


def test_inadmissible_exit_code():
    code, text = run(["instanton", "1,1,1", "2", "-5"])
    assert code == 1 and "inadmissible" in text


def test_bad_arguments_exit_one():
    assert run(["coh", "0,1,2", "--sheaf", "O(0)"])[0] == 1
    assert run(["nosuch"])[0] == 1
    assert run(["coh", "1,1,1", "--sheaf", "Q(0)"])[0] == 1


def test_sweep_dimensions():
    code, text = run(["--json", "sweep", "1,1,1", "--k1", "1..1", "--k2", "0..3", "--emit", "dimension"])
    assert code == 0
    assert [r["dimension"] for r in json.loads(text)["results"]["rows"]] == [12, 18, 24, 30]


def test_deviations_deterministic():
    a = run(["--json", "deviations"])
    assert a == run(["--json", "deviations"])
    assert len(json.loads(a[1])["deviations"]) == 6


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "scrollinst", "info", "1,1,1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout
