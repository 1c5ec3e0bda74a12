import io
import json
import subprocess
import sys

import pytest

from planezeros.cli import dumps, run

SINGLE = {"n": 2, "hyperplanes": [{"a": [["1", "0"], ["0", "1"]], "c": ["0", "0"], "mult": 1}]}
PAIR = {"n": 2, "hyperplanes": [{"a": [["1", "0"], ["0", "1"]], "c": ["1/3", "0"], "mult": 1},
                                {"a": [["1", "0"], ["0", "-1"]], "c": ["1/5", "0"], "mult": 1}]}
POINT = '[["1/2","0"],[0.25,0.1]]'


def call(tmp_path, command, doc, *extra):
    path = tmp_path / "in.json"
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    out = io.StringIO()
    code = run([command, "--input", str(path), *extra], stdout=out)
    return code, json.loads(out.getvalue())


def without_timings(report):
    return {k: v for k, v in report.items() if k != "timings"}


def test_decide_reject(tmp_path):
    code, rep = call(tmp_path, "decide", SINGLE)
    assert code == 2
    assert rep["result"]["verdict"] == "reject"
    assert rep["result"]["witness"] == {"p": 1, "q": 2, "sum": -1}
    assert set(rep) >= {"command", "input_digest", "result", "timings"}


def test_decide_accept(tmp_path):
    code, rep = call(tmp_path, "decide", PAIR)
    assert code == 0 and rep["result"]["verdict"] == "accept"
    assert rep["result"]["model"]["l2_factors"] == 2


def test_index_pair(tmp_path):
    code, rep = call(tmp_path, "index", PAIR)
    assert code == 0 and rep["result"]["index"] == [[0, 0], [0, 0]]


def test_classify_witness(tmp_path):
    doc = {"n": 3, "hyperplanes": [{"a": [["1", "0"], ["1/2", "0"], ["0", "1"]]}]}
    code, rep = call(tmp_path, "classify", doc)
    comp = rep["result"]["components"][0]
    assert code == 0 and comp["class"] == "L2" and comp["witness"] == [1, 3]


def test_classify_l1(tmp_path):
    doc = {"n": 2, "hyperplanes": [{"a": [["1", "1"], ["2", "2"]]}]}
    _, rep = call(tmp_path, "classify", doc)
    comp = rep["result"]["components"][0]
    assert comp["class"] == "L1" and comp["k0"] == [1, 2] and comp["scale"] == ["1", "1"]


@pytest.mark.parametrize("doc, fragment", [
    ({"n": 2, "hyperplanes": [{"a": [["1", "0"], ["0.5", "1"]]}]}, "hyperplanes[0].a[1][0]"),
    ({"n": 3, "hyperplanes": [{"a": [["1", "0"], ["0", "1"]]}]}, "dimension mismatch"),
    ({"n": 2, "hyperplanes": [{"a": [["1", "0"], [1, "1"]]}]}, "hyperplanes[0].a[1][0]"),
    ({"n": 2, "hyperplanes": [{"a": [["1", "0"], ["0", "1"]], "mult": 0}]}, "hyperplanes[0].mult"),
    ({"n": 2, "hyperplanes": [{"a": [["0", "0"], ["0", "0"]]}]}, "coefficient vector is zero"),
    ({"n": 2, "hyperplanes": [{"a": [["1", "0"], ["1/0", "1"]]}]}, "zero denominator"),
    ({"n": 1, "hyperplanes": []}, "n:"),
    ('{"n": 2,\n "hyperplanes": [ }', "line 2"),
])
def test_input_errors(tmp_path, doc, fragment):
    code, rep = call(tmp_path, "index", doc)
    assert code == 1 and fragment in rep["error"]


def test_missing_file():
    out = io.StringIO()
    assert run(["index", "--input", "/nonexistent/x.json"], stdout=out) == 1


def test_build_eval_round_trip_bitwise(tmp_path):
    code, built = call(tmp_path, "build", PAIR)
    assert code == 0
    model_path = tmp_path / "model.json"
    model_path.write_text(json.dumps(built))
    out = io.StringIO()
    assert run(["eval", "--input", str(model_path), "--point", POINT], stdout=out) == 0
    reloaded = json.loads(out.getvalue())["result"]
    _, direct = call(tmp_path, "eval", PAIR, "--point", POINT)
    assert reloaded["value"] == direct["result"]["value"]
    assert reloaded["log_value"] == direct["result"]["log_value"]


def test_eval_on_rejected_divisor(tmp_path):
    code, rep = call(tmp_path, "eval", SINGLE, "--point", POINT)
    assert code == 2 and rep["result"]["verdict"] == "reject"


def test_eval_point_errors(tmp_path):
    code, rep = call(tmp_path, "eval", PAIR, "--point", '[["1/2","0"]]')
    assert code == 1 and "--point" in rep["error"]
    code, rep = call(tmp_path, "eval", PAIR)
    assert code == 1 and "--point" in rep["error"]


def test_verify_deterministic(tmp_path):
    code, a = call(tmp_path, "verify", PAIR, "--seed", "4")
    _, b = call(tmp_path, "verify", PAIR, "--seed", "4")
    assert code == 0 and a["result"]["passed"]
    assert without_timings(a) == without_timings(b)
    assert max(a["residuals"]["periodicity"]) < 1e-8


def test_out_file(tmp_path):
    src = tmp_path / "pair.json"
    src.write_text(json.dumps(PAIR))
    dest = tmp_path / "report.json"
    assert run(["index", "--input", str(src), "--out", str(dest)], stdout=io.StringIO()) == 0
    assert json.loads(dest.read_text())["command"] == "index"


def test_float_format():
    text = dumps({"x": 0.1, "y": 1 / 3, "z": float("-inf"), "w": 2.0, "k": 3})
    assert '"x": 0.10000000000000001' in text
    assert '"y": 0.33333333333333331' in text
    assert '"z": "-Infinity"' in text and '"w": 2.0' in text and '"k": 3' in text
    assert json.loads(text)["x"] == 0.1


def test_module_entry_point(tmp_path):
    src = tmp_path / "single.json"
    src.write_text(json.dumps(SINGLE))
    proc = subprocess.run([sys.executable, "-m", "planezeros", "decide", "--input", str(src)],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and json.loads(proc.stdout)["result"]["witness"]["sum"] == -1
