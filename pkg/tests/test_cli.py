import json
import subprocess
import sys
from fractions import Fraction

import pytest

from fgtorus.cli import main
from fgtorus.surface import new_surface, quadrilateral_piece


@pytest.fixture
def t1_file(tmp_path):
    p = tmp_path / "t1.json"
    p.write_text(new_surface(1, 1).to_json())
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_rank_example(capsys, t1_file):
    code, obj = run(capsys, "rank", "-s", t1_file, "-n", "2", "--order", "20")
    assert code == 0
    assert (obj["rank"], obj["formula"], obj["pass"]) == (25, 25, True)


def test_unknown_flag(capsys):
    assert main(["rank", "--bogus"]) == 2
    assert main(["nonsense"]) == 2


def test_missing_input(capsys, tmp_path):
    assert main(["rank", "-n", "2", "--order", "20"]) == 2
    assert main(["quiver", "-s", str(tmp_path / "absent.json"), "-n", "2"]) == 2
    assert main(["rank", "-s", str(tmp_path / "absent.json"), "-n", "2"]) == 2


def test_surface_commands(capsys, tmp_path):
    out = tmp_path / "s.json"
    assert main(["surface", "new", "-g", "1", "-m", "2", "-o", str(out)]) == 0
    code, obj = run(capsys, "surface", "validate", "-s", str(out))
    assert code == 0 and obj == {"errors": [], "pass": True}
    bad = tmp_path / "bad.json"
    data = json.loads(out.read_text())
    data["gluings"] = data["gluings"][1:]
    bad.write_text(json.dumps(data))
    code, obj = run(capsys, "surface", "validate", "-s", str(bad))
    assert code == 1 and "unglued side" in obj["errors"]
    assert main(["surface", "new", "-g", "0", "-m", "2"]) == 2


def test_center_and_normalform(capsys, t1_file):
    code, obj = run(capsys, "center", "-s", t1_file, "-n", "3", "--order", "20")
    assert code == 0 and obj["kernel_rank"] == 2 and obj["indices"] == {"1": 1, "3": 9}
    code, obj = run(capsys, "center", "-s", t1_file, "-n", "2", "--formal")
    assert code == 0 and obj["generators"] == [[2, 2, 2]]
    code, obj = run(capsys, "normalform", "-s", t1_file, "-n", "3")
    assert code == 0 and obj["s"] == [1, 3, 3] and obj["zeros"] == 2


def test_pbar(capsys):
    code, obj = run(capsys, "pbar", "--n", "2", "--m", "2", "--k", "1")
    assert code == 0 and obj["polynomial"] == "y1**2 - 2"
    assert main(["pbar", "--n", "2", "--m", "2", "--k", "3"]) == 2


def test_loop_image_and_p4(capsys, t1_file):
    code, obj = run(capsys, "loop-image", "-s", t1_file, "-n", "3", "--order", "20")
    assert code == 0 and len(obj["loops"]) == 2
    code, obj = run(capsys, "p4check", "-n", "3")
    assert code == 0 and obj["identities"] == 8


def test_flipseq(capsys, tmp_path):
    p = tmp_path / "p4.json"
    p.write_text(quadrilateral_piece().to_json())
    code, obj = run(capsys, "flipseq", "-s", str(p), "-e", "0", "-n", "2")
    assert code == 0 and obj["vertices"] == [0]
    code, obj = run(capsys, "flipseq", "-s", str(p), "-e", "0", "-n", "2", "--max-len", "0")
    assert code == 1 and obj["found"] is False


def test_irrep_pipeline(capsys, tmp_path, t1_file):
    spec, irrep = tmp_path / "spec.json", tmp_path / "irrep.json"
    assert main(["irrep", "random", "-s", t1_file, "-n", "2", "--order", "20", "--seed", "4", "-o", str(spec)]) == 0
    assert main(["irrep", "build", "--spec", str(spec), "-o", str(irrep)]) == 0
    code, obj = run(capsys, "irrep", "verify", str(irrep))
    assert code == 0 and obj["dimension"] == 5 and obj["pass"]
    data = json.loads(irrep.read_text())
    # negate one central character value
    data["spec"]["f_values"][0] = [str(-Fraction(x)) for x in data["spec"]["f_values"][0]]
    irrep.write_text(json.dumps(data))
    code, obj = run(capsys, "irrep", "verify", str(irrep))
    assert code == 1 and not obj["central_scalars"]


def test_verify_deterministic(capsys, monkeypatch):
    code, a = run(capsys, "verify", "--suite", "homology", "--seed", "7")
    monkeypatch.setenv("FG_THREADS", "3")
    code2, b = run(capsys, "verify", "--suite", "homology", "--seed", "7")
    assert code == code2 == 0
    assert a == b
    assert all("runtime-ms" not in c for c in a["cases"])
    _, c = run(capsys, "verify", "--suite", "p4", "--timings")
    assert all("runtime-ms" in x for x in c["cases"])


def test_module_entry_point(t1_file):
    res = subprocess.run([sys.executable, "-m", "fgtorus", "rank", "-s", t1_file, "-n", "2", "--order", "20"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["rank"] == 25
