import io
import json
import shutil
import subprocess
import sys

from equivdiv.cli import run
from equivdiv.verify import default_corpus


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


def test_schur_json():
    status, out, _ = call("schur", "--group", "A5", "--format", "json")
    assert status == 0
    assert out == '{"schema":1,"group":"A5","schur":[2]}\n'


def test_h2_units_char2():
    status, out, _ = call("h2-units", "--group", "A5", "--char", "2", "--format", "json")
    assert status == 0 and json.loads(out)["h2_units"] == []


def test_text_output():
    status, out, _ = call("schur", "--group", "V4")
    assert status == 0 and "V4" in out


def test_obstruction_a5():
    status, out, _ = call("obstruction", "--ramification", "a5_p1.json", "--format", "json")
    js = json.loads(out)
    assert status == 0
    assert js["b"] == 2 and js["c_divisors"] == [1, 2] and js["pic0_coker_order"] == 1


def test_pic0_klein():
    _, out, _ = call("pic0", "--ramification", "klein_e.json", "--format", "json")
    assert json.loads(out)["pic0_coker_order"] == 1
    _, out, _ = call("pic0", "--ramification", "klein_y.json", "--format", "json")
    assert json.loads(out)["pic0_coker_order"] == 2


def test_pic0_inadmissible():
    status, _, err = call("pic0", "--group", "S3", "--c", "2")
    assert status == 2 and err.startswith("error:inadmissible_c:")


def test_h1_div0():
    status, out, _ = call("h1", "--ramification", "s3_p1.json", "--format", "json")
    js = json.loads(out)
    assert status == 0 and js["h1"] == js["b_formula"] == js["degree_check"]


def test_fixed_regular():
    _, out, _ = call("fixed", "--group", "C3", "--module", "regular", "--format", "json")
    assert json.loads(out)["fixed_rank"] == 1


def test_toric(tmp_path):
    cyc = tmp_path / "cyc.json"
    cyc.write_text('{"dim":1,"coeffs":[1,0,0]}')
    status, out, _ = call("toric", "--fan", "p2.json", "--aut", "p2_aut.json", "--format", "json")
    js = json.loads(out)
    assert status == 0 and js["aut_order"] == 6 and js["cone_orbits"]["1"] == [[0, 1, 2]]
    status, _, err = call("toric", "--fan", "p2.json", "--aut", "p2_aut.json", "--cycle", str(cyc))
    assert status == 2 and "not_orbit_constant" in err


def test_usage_error():
    status, out, err = call("schur")
    assert status == 2 and out == ""
    assert err.startswith("error:usage:") and err.count("\n") == 1


def test_bad_group():
    status, _, err = call("schur", "--group", "Q7")
    assert status == 2 and err.startswith("error:")


def test_bad_char():
    status, _, err = call("h2-units", "--group", "C2", "--char", "4")
    assert status == 2


def test_budget_exceeded():
    status, _, err = call("h1", "--group", "S4", "--module", "regular", "--budget", "100")
    assert status == 3 and err.startswith("error:budget_exceeded:")


def test_missing_file():
    status, _, err = call("obstruction", "--ramification", "nope.json")
    assert status == 2 and "nope.json" in err


def test_deterministic_json():
    a = call("obstruction", "--ramification", "v4_p1.json", "--format", "json")
    b = call("obstruction", "--ramification", "v4_p1.json", "--format", "json")
    assert a == b


def test_verify_tampered(tmp_path):
    root = tmp_path / "corpus"
    (root / "scenarios").mkdir(parents=True)
    shutil.copy(default_corpus() / "scenarios" / "s3_p1.json", root / "scenarios")
    obj = json.loads((root / "scenarios" / "s3_p1.json").read_text())
    obj["declared_c"] = 2
    (root / "scenarios" / "bad.json").write_text(json.dumps(obj))
    status, out, _ = call("verify", "--corpus", str(root), "--format", "json")
    js = json.loads(out)
    assert status == 1 and js["status"] == "fail"
    failed = [c for c in js["checks"] if c["status"] == "fail"]
    assert [c["name"] for c in failed] == ["declared-c-admissible"]


def test_verify_empty(tmp_path):
    status, _, err = call("verify", "--corpus", str(tmp_path))
    assert status == 2 and err.startswith("error:corpus_missing:")
    status, _, err = call("verify", "--corpus", str(tmp_path / "absent"))
    assert err.startswith("error:corpus_missing:")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "equivdiv", "schur", "--group", "S3", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["schur"] == []
