import csv
import io
import json
import math

import pytest

from moframe.cli import dumps, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_classify_helix():
    doc = report("classify", "--curve", "circular_helix", "--samples", "101")
    assert doc["schema"] == "moframe/1"
    assert doc["general_helix"]["verdict"] is True
    assert doc["lancret"]["mean"] == pytest.approx(1.0, abs=1e-14)
    assert doc["config"]["samples"] == 101
    assert doc["config"]["curve"] == {"catalog": "circular_helix", "params": {}}


def test_json_field_order():
    doc = report("classify", "--curve", "circular_helix", "--samples", "11")
    assert list(doc)[:5] == ["schema", "command", "config", "curve", "grid"]
    assert list(doc)[-1] == "verdicts"


def test_classify_twisted_cubic_reports_constant_kappa_error():
    doc = report("classify", "--curve", "twisted_cubic", "--samples", "21")
    assert doc["general_helix"]["verdict"] is False
    assert doc["slant_constant_kappa"] is None
    assert "curvature varies" in doc["slant_constant_kappa_error"]


def test_classify_line_exit_3():
    code, out, err = call("classify", "--curve", "line")
    assert code == 3 and out == ""
    assert "CurvatureVanishes" in err


def test_bertrand_verify_example():
    doc = report("bertrand", "verify", "--curve", "bertrand_phi", "--other", "bertrand_psi")
    assert doc["theta"] == pytest.approx(1.5707963, abs=1e-7)
    assert doc["c"] == pytest.approx(0.7071068, abs=1e-7)
    assert doc["pair"]["verdict"] is True


def test_bertrand_mate_json_and_csv(tmp_path):
    path = tmp_path / "mate.csv"
    doc = report("bertrand", "mate", "--curve", "circular_helix", "--c", "0.5", "--samples", "7",
                 "--csv", str(path))
    assert doc["pair"]["a"] == pytest.approx(3.0)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["s", "x", "y", "z"] and len(rows) == 8


def test_mate_csv_to_stdout():
    code, out, _ = call("bertrand", "mate", "--curve", "circular_helix", "--c", "0.5", "--samples", "4",
                        "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "s,x,y,z" and len(out.splitlines()) == 5


def test_combine_translate():
    doc = report("combine", "--curve", "circular_helix", "--other-offset", "0.3", "0", "0.4", "--h", "0.5",
                 "--samples", "21")
    assert doc["relation_residual"] < 1e-9
    assert doc["verdicts"]["relation"] is True


def test_frames_csv():
    code, out, _ = call("frames", "--curve", "circular_helix", "--samples", "5")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:4] == ["s", "x", "y", "z"] and rows[0][-3:] == ["ode_r1", "ode_r2", "ode_r3"]
    assert len(rows) == 6
    assert float(rows[3][13]) == pytest.approx(0.5)


def test_frames_json_line_has_nulls():
    doc = report("frames", "--curve", "line", "--samples", "3", "--format", "json")
    assert doc["rows"][0][14] is None


def test_expression_curve():
    doc = report("classify", "--x", "cos(s)", "--y", "sin(s)", "--z", "s", "--domain", "-3", "3",
                 "--samples", "21")
    assert doc["lancret"]["mean"] == pytest.approx(1.0)
    assert doc["config"]["curve"]["unit_speed"] is False


def test_catalog_parameter():
    doc = report("classify", "--curve", "salkowski", "--param", "m=0.3", "--samples", "21")
    assert doc["slant_general"]["mean"] == pytest.approx(-0.3, rel=1e-8)


@pytest.mark.parametrize("argv", [
    ["classify", "--curve", "nope"],
    ["classify"],
    ["classify", "--x", "sin(t)", "--y", "s", "--z", "0", "--domain", "0", "1"],
    ["classify", "--x", "s", "--y", "s", "--z", "0"],
    ["classify", "--curve", "circular_helix", "--samples", "2"],
    ["classify", "--curve", "circular_helix", "--threshold", "0"],
    ["classify", "--curve", "circular_helix", "--range", "-9", "0"],
    ["classify", "--curve", "salkowski", "--param", "m=2"],
    ["classify", "--curve", "salkowski", "--param", "m"],
    ["combine", "--curve", "circular_helix", "--h", "2", "--other", "line"],
    ["bertrand", "verify", "--curve", "circular_helix"],
    ["classify", "--curve", "circular_helix", "--expect", "bogus"],
    ["classify", "--curve", "circular_helix", "--format", "csv"],
    ["nonsense"],
])
def test_input_errors_exit_2(argv, capsys):
    code, _, _ = call(*argv)
    assert code == 2


def test_expect_exit_codes():
    base = ["classify", "--curve", "twisted_cubic", "--samples", "21"]
    assert call(*base, "--expect", "general_helix=false")[0] == 0
    assert call(*base, "--expect", "general_helix")[0] == 1
    assert call("bertrand", "mate", "--curve", "general_helix_ex32", "--c", "0.25",
                "--expect", "bertrand_pair")[0] == 1


def test_help_exit_0(capsys):
    assert call("--help")[0] == 0


def test_determinism_and_threads(monkeypatch):
    argv = ["classify", "--curve", "salkowski", "--samples", "31"]
    one = call(*argv)[1]
    monkeypatch.setenv("MOFRAME_THREADS", "4")
    two = call(*argv)[1]
    assert one == two


def test_output_file(tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = call("classify", "--curve", "circular_helix", "--samples", "5", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["schema"] == "moframe/1"


def test_dumps_formatting():
    assert dumps({"a": 0.1, "b": math.nan, "c": [1.0, math.inf], "d": True}) == (
        '{\n  "a": 0.10000000000000001,\n  "b": null,\n  "c": [1, null],\n  "d": true\n}')
