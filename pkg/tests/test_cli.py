import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from biortho import scenario as scn
from biortho.cli import main
from biortho.errors import ParseError, UnknownCheck

GOLDEN = Path(__file__).parent / "golden"
SCENARIOS = sorted(p for p in GOLDEN.glob("*.json") if not p.name.endswith(".expected.json"))


def _run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def _write(tmp_path, doc, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc, encoding="utf-8")
    return str(p)


def test_lebrun_scenario(tmp_path, capsys):
    f = _write(tmp_path, {"kind": "model", "model": {"name": "ch2"}, "chi": 1, "checks": ["lebrun_chain"]})
    code, out = _run(["run", f, "--format", "machine"], capsys)
    doc = json.loads(out.out)
    assert code == 0
    ratio = [r for r in doc["reports"] if r["name"] == "lebrun_chain.ratio"][0]
    assert ratio["data"]["ratio"] == pytest.approx(2.25, abs=1e-12)


def test_clifford_scenario(tmp_path, capsys):
    f = _write(
        tmp_path,
        {"kind": "immersion", "points": [{"fixture": "clifford"}], "checks": ["sphere_theorem"], "samples": 30000},
    )
    code, out = _run(["run", f, "--format", "machine"], capsys)
    doc = json.loads(out.out)
    assert code == 0 and doc["reports"][0]["data"]["verdict"] == "ProductOfSpheres"


@pytest.mark.parametrize(
    "doc,field",
    [
        ("{not json", "invalid JSON"),
        ({"kind": "torus", "checks": ["k1perp"]}, "kind"),
        ({"kind": "model", "model": {"name": "s4"}, "checks": []}, "checks"),
        ({"kind": "model", "model": {"name": "s4"}, "checks": ["k1perp"], "tol": 0}, "tol"),
        ({"kind": "model", "model": {"name": "s4"}, "checks": ["k1perp"], "seed": -3}, "seed"),
        ({"kind": "model", "checks": ["k1perp"]}, "model"),
        ({"kind": "immersion", "points": [{"c": 1, "A": [[1, 2]]}], "checks": ["gauss_scal"]}, "points[0].A"),
        ({"kind": "model", "model": {"name": "s4"}, "checks": ["k1perp", "nope"]}, "nope"),
    ],
)
def test_malformed_exit_2(tmp_path, capsys, doc, field):
    code, out = _run(["run", _write(tmp_path, doc)], capsys)
    assert code == 2
    assert field in out.err


def test_missing_file(capsys):
    code, out = _run(["run", "/nonexistent/scenario.json"], capsys)
    assert code == 2 and "cannot read" in out.err


def test_unknown_check_type():
    with pytest.raises(UnknownCheck):
        scn.parse_scenario({"kind": "arithmetic", "checks": ["lebrun_chain"]})
    with pytest.raises(ParseError):
        scn.parse_scenario([])


def test_domain_error_exit_2(tmp_path, capsys):
    f = _write(tmp_path, {"kind": "model", "model": {"name": "s4"}, "checks": ["lebrun_chain"]})
    code, out = _run(["run", f], capsys)
    assert code == 2 and "UnsupportedModel" in out.err


def test_failing_check_exit_1(tmp_path, capsys):
    f = _write(tmp_path, {"kind": "arithmetic", "e": 9, "j": 5, "checks": ["connected_sum"]})
    code, out = _run(["run", f], capsys)
    assert code == 1 and "obstruct" in out.out


def test_overrides_and_out(tmp_path, capsys):
    f = _write(tmp_path, {"kind": "model", "model": {"name": "s4"}, "checks": ["oracle"]})
    out_path = tmp_path / "report.json"
    code, out = _run(["run", f, "--samples", "5000", "--seed", "3", "--tol", "1e-8", "--out", str(out_path)], capsys)
    doc = json.loads(out_path.read_text())
    assert code == 0 and "oracle" in out.out
    assert doc["meta"]["samples"] == 5000 and doc["meta"]["seed"] == 3 and doc["meta"]["tol"] == 1e-8


def test_bad_flags(capsys):
    assert main(["oracle", "--samples", "0"]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_oracle_single_model(capsys):
    code, out = _run(["oracle", "--count", "1", "--model", "s4", "--samples", "20000", "--format", "machine"], capsys)
    doc = json.loads(out.out)
    assert code == 0 and doc["reports"][0]["lhs"] < 1e-9


def test_oracle_deterministic(capsys):
    argv = ["oracle", "--count", "3", "--samples", "30000", "--seed", "5", "--format", "machine"]
    code1, a = _run(argv, capsys)
    code2, b = _run(argv, capsys)
    assert code1 == code2 == 0 and a.out == b.out


def test_model_report(capsys):
    code, out = _run(["model-report", "h2xh2", "--chi", "2", "--samples", "20000"], capsys)
    assert code == 0
    assert "h2xh2_certificate" in out.out and "96 pi^2" in out.out


def test_model_report_bad_param(capsys):
    code, out = _run(["model-report", "s4", "--param", "r=abc"], capsys)
    assert code == 2 and "r" in out.err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "biortho", "oracle", "--count", "1", "--model", "flat",
                          "--samples", "1000"], capture_output=True, text=True)
    assert res.returncode == 0 and "oracle.max_deviation" in res.stdout


def test_report_schema():
    r = scn.run_scenario(scn.parse_scenario({"kind": "arithmetic", "chi": 2, "tau": 0, "checks": ["hitchin_thorpe"]}))
    d = r[0].to_dict()
    for key in ("name", "lhs", "rhs", "margin", "verdict", "notes"):
        assert key in d


def _close(a, b):
    if isinstance(a, dict):
        return a.keys() == b.keys() and all(_close(a[k], b[k]) for k in a)
    if isinstance(a, list):
        return len(a) == len(b) and all(_close(x, y) for x, y in zip(a, b))
    if isinstance(a, float) and isinstance(b, (int, float)):
        return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)
    return a == b


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.stem)
def test_golden(path, capsys):
    code, first = _run(["run", str(path), "--format", "machine"], capsys)
    _, second = _run(["run", str(path), "--format", "machine"], capsys)
    assert first.out == second.out
    expected = json.loads(path.with_suffix(".expected.json").read_text(encoding="utf-8"))
    got = json.loads(first.out)
    assert code == expected["exit_code"]
    assert _close(got, expected)
