from __future__ import annotations

import io
import json
import re

import pytest

from chainparams.cli import main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_chi_example(capsys):
    code, out, _ = run(capsys, "chi", "--t2", "0,1,0:0,5,0", "--t1", "1,0,0:3,0,0", "--genus", "2")
    assert code == 0 and json.loads(out) == {"chi": 3}


def test_region_example(capsys):
    code, out, _ = run(capsys, "region", "--family", "m1n", "--instance", "(2,1,1;3,0,0)")
    doc = json.loads(out)
    assert code == 0 and (doc["A_I"], doc["A_II"], doc["A_III"]) == (9, 6, 3)


def test_classify_example(capsys):
    code, out, _ = run(capsys, "classify-linear", "--ranks", "2,1,2")
    doc = json.loads(out)
    assert code == 0 and doc["case"] == "i" and doc["semistable_set"] == "{(0,0)}"


def test_instance_from_stdin(capsys, monkeypatch):
    doc = {"genus": 2, "ranks": [1, 1], "degrees": [1, 0], "box": {"lower": ["0"], "upper": ["5"]}}
    code, out, _ = run(capsys, "walls", stdin=json.dumps(doc), monkeypatch=monkeypatch)
    walls = json.loads(out)["walls"]
    assert code == 0 and [w["equation"] for w in walls] == ["a1 = 1", "a1 = 3", "a1 = 5"]


def test_instance_file(capsys, tmp_path):
    path = tmp_path / "instance.json"
    path.write_text(json.dumps({"genus": 2, "ranks": [2, 1, 1], "degrees": [3, 0, 0]}))
    code, out, _ = run(capsys, "dim", "--instance", str(path))
    assert code == 0 and json.loads(out)["dimension"] == 7


@pytest.mark.parametrize(
    "argv",
    [
        ["slope", "--instance", "(1,1,1;2,1,0)", "--alpha", "0,1,2"],
        ["dual", "--instance", "(1,2,1;2,0,0)", "--alpha", "0,1,3"],
        ["tau", "--instance", "(1,1,1;2,1,0)", "--alpha", "0,1,2"],
        ["birat", "--instance", "(1,2;1,0)", "--lower", "0", "--upper", "5"],
        ["chambers", "--instance", "(1,1;1,0)", "--lower", "0", "--upper", "5"],
        ["vset", "--r1", "0,1,1", "--r2", "1,0,0"],
        ["oracle", "--dims", "1,1,1", "--alpha", "0,3,1"],
        ["flip", "--genus", "5"],
        ["extremal", "--instance", "(2,1,1;3,0,0)"],
    ],
)
def test_outputs_are_json_without_floats(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    doc = json.loads(out)

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(doc)
    # stable field order
    assert main(list(argv)) == 0 and capsys.readouterr().out == out


def test_known_values(capsys):
    _, out, _ = run(capsys, "slope", "--instance", "(1,1,1;2,1,0)", "--alpha", "0,1,2")
    assert json.loads(out)["slope"] == "2"
    _, out, _ = run(capsys, "birat", "--instance", "(1,2;1,0)", "--lower", "0", "--upper", "5")
    doc = json.loads(out)
    assert (doc["alpha_m"], doc["alpha_M"]) == ("1", "4")
    _, out, _ = run(capsys, "oracle", "--dims", "1,1,1", "--alpha", "0,3,1")
    assert json.loads(out)["exists"] is False


def test_exit_codes(capsys):
    code, _, err = run(capsys, "walls", "--instance", "(1,1;1,0)", "--lower", "0")
    assert code == 2 and "error" in json.loads(err)
    code, _, err = run(capsys, "extremal", "--instance", "(1,2,1;0,0,2)")
    assert code == 3 and json.loads(err)["error"]["label"] == "d0-exceeds-d2"
    code, _, err = run(capsys, "oracle", "--dims", "3,3,3", "--alpha", "0,1,2")
    assert code == 4 and json.loads(err)["error"]["kind"] == "cap"
    code, _, _ = run(capsys, "chi", "--t2", "1,1:0,0", "--t1", "1,1:0,0", "--genus", "1")
    assert code == 2


def test_render_is_exact_and_stable(capsys, tmp_path):
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    for p in paths:
        assert run(capsys, "render", "--instance", "(1,1,1;2,1,0)", "--out", str(p))[0] == 0
    text = paths[0].read_text()
    assert text == paths[1].read_text()
    lines = re.findall(r'<line class="region-boundary"[^>]*>', text)
    assert len(lines) == 2
    equations = sorted(re.search(r'data-equation="([^"]*)"', x).group(1) for x in lines)
    assert equations == ["-a1 + 2 a2 &gt;= 3", "a1 + a2 &gt;= 3"]
