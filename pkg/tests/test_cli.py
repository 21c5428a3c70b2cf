import json
import subprocess
import sys

import pytest

from geninv.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def matrix(entries):
    return {"rows": len(entries), "cols": len(entries[0]), "entries": entries}


@pytest.fixture
def files(tmp_path):
    return {
        "diag2_0": write(tmp_path, "diag2_0.json", matrix([[2, 0], [0, 0]])),
        "swap": write(tmp_path, "swap.json", matrix([[0, 1], [1, 0]])),
        "e": write(tmp_path, "e.json", matrix([[1, 0], [0, 0]])),
        "x": write(tmp_path, "x.json", matrix([[1, 1], [0, 1]])),
        "y": write(tmp_path, "y.json", matrix([[0]])),
        "csv": write(tmp_path, "half.csv", "1/2,0\n0,0\n"),
        "t3": write(tmp_path, "t.json", {"kind": "transformations", "degree": 3, "generators": [[1, 0, 2], [1, 1, 2]]}),
        "mono": write(tmp_path, "m.json", {"kind": "cayley", "order": 2, "table": [[1, 1], [1, 1]]}),
        "bad": write(tmp_path, "bad.json", {"kind": "cayley", "order": 2, "table": [[1, 0], [0, 0]]}),
        "garbage": write(tmp_path, "g.json", "{not json"),
        "dir": tmp_path,
    }


def run(argv, tmp_path):
    out = tmp_path / "out.json"
    code = main(argv + ["--out", str(out)])
    return code, json.loads(out.read_text()) if out.exists() else None


def test_example_a(tmp_path):
    code, rep = run(["sg", "example", "--model", "paper-example-A"], tmp_path)
    assert code == 0
    assert rep["maximal"] == ["E", "F"] and rep["greatest"] is None
    assert rep["sigma"]["0"]["members"] == ["E", "F", "EF"]


def test_example_b(tmp_path):
    code, rep = run(["sg", "example", "--model", "paper-example-B"], tmp_path)
    assert code == 0
    assert rep["sigma"]["1"]["members"] == ["E", "F"] and rep["sigma"]["2"]["members"] == []


def test_mat_drazin(files, tmp_path):
    code, rep = run(["mat", "drazin", "--in", files["diag2_0"]], tmp_path)
    assert code == 0 and rep["index"] == 1
    assert rep["inverse"]["entries"] == [["1/2", 0], [0, 0]]
    assert rep["spectral_idempotent"]["entries"] == [[0, 0], [0, 1]]


def test_mat_csv_input(files, tmp_path):
    code, rep = run(["mat", "drazin", "--in", files["csv"]], tmp_path)
    assert code == 0 and rep["inverse"]["entries"] == [[2, 0], [0, 0]]


def test_mat_invert_along_nonexistence_is_exit_1(files, tmp_path):
    code, rep = run(["mat", "invert-along", "--a", files["swap"], "--d", files["e"]], tmp_path)
    assert code == 1 and rep["exists"] is False
    code, rep = run(["mat", "invert-along", "--a", files["diag2_0"], "--d", files["e"]], tmp_path)
    assert code == 0 and rep["witness"]["entries"] == [["1/2", 0], [0, 0]]


def test_mat_core_decomp_and_sigma2(files, tmp_path):
    code, rep = run(["mat", "core-decomp", "--in", files["diag2_0"]], tmp_path)
    assert code == 0 and rep["M"]["entries"] == [[1, 0], [0, 0]]
    code, rep = run(["mat", "sigma2", "--in", files["diag2_0"]], tmp_path)
    assert code == 0 and rep["M"]["entries"] == [[1, 0], [0, 0]]


def test_op_commands(files, tmp_path):
    code, rep = run(["op", "local-spectral", "--in", files["diag2_0"]], tmp_path)
    assert code == 0
    assert rep["hyperrange"]["basis"] == [[1, 0]] and rep["hyperkernel"]["basis"] == [[0, 1]]
    code, rep = run(["op", "rosenblum", "--x", files["x"], "--y", files["y"]], tmp_path)
    assert code == 0 and rep["x"]["entries"] == [[1, 1, 0], [0, 1, 0], [0, 0, 0]]
    code, _ = run(["op", "rosenblum", "--x", files["diag2_0"], "--y", files["y"]], tmp_path)
    assert code == 2


def test_sg_commands(files, tmp_path):
    code, rep = run(["sg", "analyze", "--in", files["t3"]], tmp_path)
    assert code == 0 and rep["order"] == 4
    code, rep = run(["sg", "invert-along", "--in", files["mono"], "--a", "0", "--d", "0"], tmp_path)
    assert code == 1 and rep["exists"] is False
    code, rep = run(["sg", "invert-along", "--in", files["mono"], "--a", "0", "--d", "1"], tmp_path)
    assert code == 0 and rep["witness"] == 1
    code, rep = run(["sg", "sigma", "--in", files["mono"], "--a", "0", "--j", "2"], tmp_path)
    assert code == 0 and rep["members"] == [1]
    code, rep = run(["sg", "natural", "--in", files["mono"], "--a", "0", "--j", "1"], tmp_path)
    assert code == 0 and rep["decomposition"] == {"M": 1, "inverse": 1, "core": 1}
    code, rep = run(["sg", "drazin", "--in", files["mono"], "--a", "0"], tmp_path)
    assert code == 0 and (rep["index"], rep["inverse"]) == (2, 1)


def test_natural_nonexistence(tmp_path):
    left_zero = write(tmp_path, "lz.json", {"kind": "cayley", "order": 2, "table": [[0, 0], [1, 1]]})
    code, rep = run(["sg", "natural", "--in", left_zero, "--a", "0", "--j", "0"], tmp_path)
    assert code == 1 and rep["naturally_invertible"] is False


def test_input_errors(files, tmp_path, capsys):
    assert main(["sg", "analyze", "--in", files["bad"]]) == 2
    assert "associative" in capsys.readouterr().err
    assert main(["sg", "analyze", "--in", files["garbage"]]) == 2
    assert main(["sg", "sigma", "--in", files["mono"], "--a", "7", "--j", "1"]) == 2
    assert "--a" in capsys.readouterr().err
    assert main(["mat", "drazin", "--in", str(files["dir"] / "missing.json")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["sg", "sigma", "--in", files["mono"], "--a", "0", "--j", "5"])
    assert exc.value.code == 2


def test_invariant_violation_exit_3(monkeypatch, files, tmp_path):
    from geninv import ring
    from geninv.errors import InvariantViolation

    def boom(A):
        raise InvariantViolation("forced", {"A": A.to_json()})

    monkeypatch.setattr(ring, "drazin_matrix", boom)
    code, rep = run(["mat", "drazin", "--in", files["diag2_0"]], tmp_path)
    assert code == 3 and rep["counterexample"]["A"]["entries"] == [[2, 0], [0, 0]]


def test_verify_small_and_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["verify", "--suite", "all", "--order", "2", "--seed", "4", "--trials", "2"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["failures"] == 0


def test_console_script_entry(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "geninv.cli", "sg", "example", "--model", "paper-example-A", "--out", "-"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["maximal"] == ["E", "F"]
