import json

import numpy as np
import pytest

from mgsim.cli import main

H = 0.7071067811865476

CIRCUIT = f"""circuit n=3
state + 0 1
gate gvw 1 V=[0,1;1,0] W=[1,0;0,-1]
gate diag 1 3 [1,1i,1i,-1]
gate u1 U=[{H},{H};{H},-{H}]
measure 2
"""


@pytest.fixture
def circuit_file(tmp_path):
    path = tmp_path / "circuit.mg"
    path.write_text(CIRCUIT)
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.mark.parametrize("engine", ["quadratic", "lie", "dense"])
def test_run_engines(capsys, circuit_file, engine):
    code, data = run_json(capsys, ["run", circuit_file, "--engine", engine])
    assert code == 0
    assert data["schema"] == 1
    assert data["engine"] == engine
    assert data["unitary"] is True
    assert abs(data["p0"] + data["p1"] - 1.0) < 1e-9
    assert isinstance(data["expectation"], list) and len(data["expectation"]) == 2


def test_compare(capsys, circuit_file):
    code, data = run_json(capsys, ["compare", circuit_file])
    assert code == 0
    assert set(data["engines"]) == {"quadratic", "lie", "dense"}
    assert data["max_deviation"] < 1e-9
    assert data["agree"] is True


def test_verify_matchgate(capsys, tmp_path):
    path = tmp_path / "B.json"
    path.write_text(json.dumps(np.eye(4).tolist()))
    code, data = run_json(capsys, ["verify-matchgate", str(path)])
    assert code == 0
    assert data["is_matchgate"] is True
    assert data["eigenvector_predicate"] is True
    assert len(data["identities"]) == 10
    assert all(v == [0.0, 0.0] for v in data["identities"])

    swap = np.eye(4)[[0, 2, 1, 3]]
    path.write_text(json.dumps(swap.tolist()))
    code, data = run_json(capsys, ["verify-matchgate", str(path)])
    assert code == 0 and data["is_matchgate"] is False
    # the relabeled convention makes SWAP's partner matchgate-valid entries move
    code, data = run_json(capsys, ["verify-matchgate", str(path), "--physical"])
    assert code == 0 and data["is_matchgate"] is False


def test_verify_matchgate_complex_entries(capsys, tmp_path):
    path = tmp_path / "B.json"
    B = np.diag([1, 1j, 1j, -1]).astype(complex)
    payload = [[[v.real, v.imag] for v in row] for row in B]
    path.write_text(json.dumps({"matrix": payload}))
    code, data = run_json(capsys, ["verify-matchgate", str(path)])
    assert code == 0 and data["is_matchgate"] is True


def test_classify(capsys, tmp_path):
    path = tmp_path / "B.json"
    path.write_text(json.dumps(np.eye(4).tolist()))
    code, data = run_json(capsys, ["classify", str(path)])
    assert code == 0
    assert data["classes"] == ["mg12", "gvw", "diag"]


def test_bench(capsys):
    code, data = run_json(capsys, ["bench", "--n", "8,16", "--gates", "20", "--seed", "7"])
    assert code == 0
    assert [r["n"] for r in data["runs"]] == [8, 16]
    assert all(r["seconds"] > 0 for r in data["runs"])
    assert data["fitted_exponent"] is not None


def test_domain_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.mg"
    path.write_text("circuit n=2\nstate 0 0\ngate diag 1 2 [1,1,1,-1]\nmeasure 1\n")
    assert main(["run", str(path)]) == 1
    assert "B22*B33" in capsys.readouterr().err


def test_missing_file_exit_code(capsys):
    assert main(["run", "/nonexistent/path.mg"]) == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_adjoint_mode_guard(capsys, tmp_path):
    path = tmp_path / "nonunitary.mg"
    path.write_text("circuit n=1\nstate 0\ngate exp b:1=0.5\nmeasure 1\n")
    assert main(["run", str(path), "--engine", "quadratic",
                 "--heisenberg-mode", "adjoint"]) == 1
    assert "requires --engine dense" in capsys.readouterr().err
    assert main(["run", str(path), "--engine", "dense",
                 "--heisenberg-mode", "adjoint"]) == 0
