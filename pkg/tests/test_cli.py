import json
import subprocess
import sys

import pytest

from groebopt.cli import main
from groebopt.quboc import Qubo
from groebopt.solvers import SampleSet


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_gb_quadric(capsys, data_dir):
    code, out = run(capsys, "gb", "--vars", "x,y,z", "--order", "lex", data_dir / "quadric.poly")
    assert code == 0
    assert out.splitlines() == ["z^4 - 3/2*z^2 + 1/2", "y^2 - z^2 - 1", "x + 2*z^3 - 3*z"]
    code, out = run(capsys, "gb", "--vars", "x,y,z", "--eliminate", "1", data_dir / "quadric.poly")
    assert out.splitlines() == ["z^4 - 3/2*z^2 + 1/2"]


def test_binopt(capsys, data_dir):
    code, out = run(capsys, "binopt", "--method", "eigen", data_dir / "sec32.poly")
    d = json.loads(out)
    assert code == 0 and d["value"] == "0" and d["minimizers"] == [[1, 1, 1, 0]]
    assert d["eigenvalues"] == ["0", "1", "2", "4", "5", "6", "9", "11", "13"]
    code, out = run(capsys, "binopt", "--constraints", data_dir / "sec31_constraints.poly", data_dir / "sec31_objective.poly")
    d = json.loads(out)
    assert d["value"] == "4" and d["minimizers"] == [[1, 0, 1, 0]]


def test_feas(capsys, tmp_path):
    f = tmp_path / "sys.poly"
    f.write_text("x1 + x2 + x3 - b1\n")
    code, out = run(capsys, "feas", "--params", "b1", f)
    assert code == 0 and out.strip() == "b1^4 - 6*b1^3 + 11*b1^2 - 6*b1"


def test_qubo_reduce_then_solve(capsys, data_dir, tmp_path):
    code, out = run(capsys, "qubo-reduce", data_dir / "hij.poly")
    assert code == 0
    d = json.loads(out)
    q = Qubo.from_dict(d["qubo"])
    path = tmp_path / "q.json"
    path.write_text(json.dumps(d["qubo"]))
    code, out = run(capsys, "qubo-solve", path)
    ss = SampleSet.from_json(out)
    assert code == 0 and ss.best_energy == 0 and ss.verify(q)
    code, out1 = run(capsys, "qubo-solve", "--method", "anneal", "--seed", "9", path)
    code, out2 = run(capsys, "qubo-solve", "--method", "anneal", "--seed", "9", path)
    assert out1 == out2


def test_qubo_reduce_range_failure(capsys, data_dir):
    code, out = run(capsys, "qubo-reduce", "--epsilon", "1/10", data_dir / "hij.poly")
    assert code == 1 and json.loads(out)["error"] == "no_reduction"


def test_embed(capsys, data_dir):
    args = ["embed", "--logical", data_dir / "logical_Y.json", "--hardware", data_dir / "hardware_X.json"]
    code, out = run(capsys, *args)
    d = json.loads(out)
    assert code == 0 and d["count"] == 48 and d["variables"] == 20
    assert d["support_ideal"] == ["b_5^2 - b_5", "b_4 - 1", "b_3 - 1", "b_2 - 1", "b_1 - 1"]
    code, out = run(capsys, *args, "--fold", "auto")
    d = json.loads(out)
    assert d["count"] == 24 and d["variables"] == 12 and d["unfolded_count"] == 48


def test_toric(capsys, data_dir):
    base = ["toric-gb", "--matrix", data_dir / "A.mat", "--order-matrix", data_dir / "M.mat"]
    _, classical = run(capsys, *base)
    code, out = run(capsys, *base, "--backend", "exhaustive")
    assert code == 0
    d = json.loads(out)
    assert d["basis"] == json.loads(classical)["basis"]
    assert "w3^4*w4^2 - w1" in d["basis"] and len(d["basis"]) == 5
    _, a1 = run(capsys, *base, "--backend", "anneal", "--seed", "2024")
    _, a2 = run(capsys, *base, "--backend", "anneal", "--seed", "2024")
    assert a1 == a2 and json.loads(a1)["basis"] == d["basis"]


def test_toric_ip(capsys, data_dir, tmp_path):
    code, out = run(capsys, "toric-ip", "--matrix", data_dir / "ip_A.mat", "--rhs", data_dir / "ip_b.mat", "--cost", "1,2")
    assert code == 0 and json.loads(out) == {"solution": [2, 0]}
    a = tmp_path / "a.mat"
    a.write_text("2\n")
    b = tmp_path / "b.mat"
    b.write_text("1\n")
    code, out = run(capsys, "toric-ip", "--matrix", a, "--rhs", b)
    assert code == 1 and json.loads(out)["error"] == "infeasible"


def test_anticross(capsys, data_dir):
    code, out = run(capsys, "anticross", "--hinit", data_dir / "Hinit.mat", "--hfinal", data_dir / "Hfinal.mat")
    d = json.loads(out)
    assert code == 0 and len(d["critical_points"]) == 1
    p = d["critical_points"][0]
    assert p["point"] == ["1/2", "0"] and p["status"] == "nondegenerate"
    code, out = run(capsys, "--float", "anticross", "--hinit", data_dir / "Hinit.mat", "--hfinal", data_dir / "Hfinal.mat")
    assert json.loads(out)["critical_points"][0]["point"] == [0.5, 0.0]


def test_usage_errors(capsys, tmp_path):
    code, out = run(capsys, "gb", tmp_path / "missing.poly")
    assert code == 2 and json.loads(out)["error"] == "usage"
    bad = tmp_path / "bad.poly"
    bad.write_text("x +* y\n")
    code, out = run(capsys, "gb", bad)
    assert code == 2 and json.loads(out)["error"] == "parse_error"
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 2


def test_module_entry_point(data_dir):
    r = subprocess.run([sys.executable, "-m", "groebopt", "gb", "--order", "lex", str(data_dir / "quadric.poly")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.splitlines()[-1] == "x + 2*z^3 - 3*z"
