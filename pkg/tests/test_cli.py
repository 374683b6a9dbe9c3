import io
import json
import shutil
import subprocess
import sys

import pytest

from reslie.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, out = call(*argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def d7_files(tmp_path):
    alg, rec = tmp_path / "d7.json", tmp_path / "r.json"
    code, _ = call("example", "D7", "--p", "5", "--q", "2", "--param", "u=1", "--out", str(alg), "--recipe-out", str(rec))
    assert code == 0
    return tmp_path, alg, rec


def test_example_verify_d7():
    code, out = call("example", "D7", "--p", "5", "--q", "2", "--verify")
    assert code == 0
    assert "coboundary iff λ=−1: PASS" in out
    assert "seed: 0" in out


def test_example_verify_reports_failures():
    code, rep = call_json("example", "2A11", "--p", "3", "--verify")
    assert code == 1
    assert any(c["label"] == "C = 0" and not c["ok"] for c in rep["claims"])


def test_extend_then_reduce_roundtrip(d7_files):
    tmp, alg, rec = d7_files
    g, a, r2 = tmp / "g.json", tmp / "a.json", tmp / "r2.json"
    assert call("check", str(alg))[0] == 0
    code, rep = call_json("extend", str(alg), "--recipe", str(rec), "--out", str(g))
    assert code == 0 and rep["valid"] and rep["post_checks"]
    code, rep = call_json("reduce", str(g), "--x", "x", "--kind", "ortho_even", "--out", str(a), "--recipe-out", str(r2))
    assert code == 0 and rep["roundtrip"] and rep["case"] == "a"
    orig, back = json.loads(alg.read_text()), json.loads(a.read_text())
    for key in ("basis", "brackets", "pmap", "p"):
        assert back[key] == orig[key]
    assert back["forms"][0]["terms"] == orig["forms"][0]["terms"]
    recipe = json.loads(r2.read_text())
    assert (recipe["lam"], recipe["gamma"], recipe["P"]) == (-1, 1, {"e1": 1})
    # the recovered files can be extended again
    assert call("extend", str(a), "--recipe", str(r2), "--out", str(tmp / "g2.json"))[0] == 0
    assert json.loads((tmp / "g2.json").read_text())["brackets"] == json.loads(g.read_text())["brackets"]


def test_reduce_auto_kind(d7_files):
    tmp, alg, rec = d7_files
    g = tmp / "g.json"
    call("extend", str(alg), "--recipe", str(rec), "--out", str(g))
    code, rep = call_json("reduce", str(g), "--x", "x")
    assert code == 0 and rep["kind"] == "ortho_even"


def test_check_broken_jacobi(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({
        "schema": "reslie.algebra/1", "p": 5,
        "basis": [{"name": n, "parity": "even"} for n in "abc"],
        "brackets": [{"left": "a", "right": "b", "value": {"b": 1}}, {"left": "a", "right": "c", "value": {"c": 1}},
                     {"left": "b", "right": "c", "value": {"a": 1}}],
    }))
    code, out = call("check", str(f))
    assert code == 1
    assert "jacobi a b c" in out
    code, rep = call_json("check", str(f))
    assert ["jacobi", ["a", "b", "c"]] in rep["algebra"]["failures"]


def test_extend_rejects_bad_recipe_with_case_tag(d7_files):
    tmp, alg, rec = d7_files
    r = json.loads(rec.read_text())
    r["gamma"] = 2
    rec.write_text(json.dumps(r))
    code, rep = call_json("extend", str(alg), "--recipe", str(rec))
    assert code == 1
    assert ["ortho_even(a)", "gamma = lambda^(p-1)"] in rep["failures"]


def test_input_errors(tmp_path):
    assert call("check", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "reslie.algebra/1",\n "p": 5,\n "basis": [}')
    code, out = call("check", str(bad))
    assert code == 2 and "line 3" in out
    assert call("example", "D7", "--p", "5", "--q", "1")[0] == 2
    assert call("nonsense")[0] == 2


def test_pmap_detect_derivations_cohomology(d7_files):
    tmp, alg, _ = d7_files
    code, rep = call_json("pmap", str(alg))
    assert code == 0 and rep["pmap"][0] == {"of": "e1", "value": {"e1": 1}}
    code, rep = call_json("detect-form", str(alg), "--parity", "even", "--seed", "7")
    assert code == 0 and rep["exists"] and rep["seed"] == 7
    code, rep = call_json("derivations", str(alg), "--parity", "even", "--restricted")
    assert code == 0 and rep["dimension"] >= 2
    code, rep = call_json("cohomology", str(alg), "--form", "omega", "--derivation", "D1",
                          "--kind", "ortho_even", "--lambda", "-1")
    assert code == 0 and rep["coboundary"]
    code, rep = call_json("cohomology", str(alg), "--derivation", "D1", "--kind", "ortho_even", "--lambda", "1")
    assert code == 1 and not rep["coboundary"]
    assert call("cohomology", str(alg), "--kind", "ortho_even")[0] == 2  # two derivations, none chosen


def test_json_reports_are_versioned():
    code, rep = call_json("example", "C11A", "--p", "5", "--verify")
    assert code == 0
    assert rep["schema"] == "reslie.report/1" and rep["seed"] == 0 and rep["exit_code"] == 0


@pytest.mark.skipif(shutil.which("reslie") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["reslie", "example", "D7", "--p", "5", "--q", "2", "--verify"], capture_output=True, text=True)
    assert out.returncode == 0 and "coboundary iff λ=−1: PASS" in out.stdout


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "reslie.cli", "example", "W1", "--p", "5", "--verify"],
                         capture_output=True, text=True)
    assert out.returncode == 1  # the zero-row claim fails, see README


def test_check_reports_degenerate_form(d7_files):
    _, alg, _ = d7_files
    doc = json.loads(alg.read_text())
    doc["forms"][0]["terms"] = [["e1", "e2", 1]]
    alg.write_text(json.dumps(doc))
    code, rep = call_json("check", str(alg))
    assert code == 1
    assert rep["forms"] == {"omega": False} and all(rep["derivations"].values())
