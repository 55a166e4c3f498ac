import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from k3orb.cli import run

from cli_cases import CASES, NIK, O

GOLDEN = Path(__file__).parent / "golden"


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, first, _ = invoke(CASES[name])
    assert code == 0
    assert first == (GOLDEN / f"{name}.txt").read_text()
    assert invoke(CASES[name])[1] == first


def _text_values(text):
    values = {}
    for line in text.splitlines():
        label, _, value = line.partition(" = ")
        values[label] = value.split("  (approx")[0]
    return values


@pytest.mark.parametrize(
    "name", ["pairing", "joyce", "joyce_double", "walls", "walls_none", "thresholds", "slope", "charge"]
)
def test_json_matches_text(name):
    _, text, _ = invoke(CASES[name])
    _, js, _ = invoke(CASES[name] + ["--json"])
    payload = json.loads(js)
    values = _text_values(text)
    for label, value in values.items():
        assert str(payload[label]) == value


def test_json_series():
    _, js, _ = invoke(["series", "--order", "4", "--json"])
    assert json.loads(js) == [1, 24, 324, 3200, 25650]


def test_json_transport_and_decomp():
    payload = json.loads(invoke(CASES["transport"] + ["--json"])[1])
    assert payload["d"] == 0 and payload["n"] == 1 and payload["empty"] is False
    decs = json.loads(invoke(CASES["decomp"] + ["--json"])[1])
    assert decs == [[[1] + [0] * 10, [1] + [0] * 10], [[2] + [0] * 10]]


def test_approx_marked():
    _, js, _ = invoke(["joyce", "--config", NIK, "--v", "2,0,0,0,0,0,0,0,0,0,2", "--json", "--approx"])
    payload = json.loads(js)
    assert payload["J"] == "1/4" and payload["J_approx"] == "0.25"


def test_config_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text('{"name": "a2", "ns_gram": [[2]], "singular_points": [{"type": "A2", "count": 1}], "chi_O": "2"}')
    code, out, _ = invoke(["pairing", "--config", str(path), "--v", "0,0,1,1,0", "--w", "0,0,1,1,0"])
    assert code == 0
    assert out.splitlines()[0] == "pairing = -2"


@pytest.mark.parametrize(
    "argv",
    [
        ["joyce", "--config", NIK, "--v", "0,0,0,0,0,0,0,0,0,0,0"],
        ["joyce", "--config", NIK, "--v", "1,0,1"],
        ["joyce", "--config", "/nonexistent.json", "--v", O],
        ["walls", "--config", NIK, "--c1", "1,0,0", "--c2", "2,0,1"],
        ["thresholds", "--config", NIK, "--class", "0,1,0"],
        ["series", "--order", "-1"],
    ],
)
def test_domain_errors(argv):
    code, out, err = invoke(argv)
    assert code == 1 and out == ""
    assert err.startswith("k3orb: error:") and err.count("\n") == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["joyce", "--config", NIK],
        ["joyce", "--config", NIK, "--v", "1,x,0"],
        ["decomp", "--config", NIK, "--v", O, "--box", "0-1"],
    ],
)
def test_usage_errors(argv, capsys):
    assert invoke(argv)[0] == 2


def test_entry_point_byte_identical():
    cmd = [sys.executable, "-m", "k3orb", *CASES["decomp_phase"]]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b == (GOLDEN / "decomp_phase.txt").read_bytes()
