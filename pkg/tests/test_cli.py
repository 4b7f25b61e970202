import json
import subprocess
import sys

import pytest

from surjpoly.cli import main
from surjpoly.expr import parse_weyl
from surjpoly.formats import poly_from_json, witness_from_json
from surjpoly.backends import WeylAlgebra
from surjpoly.solver import verify


@pytest.fixture
def commutator_file(tmp_path):
    p = tmp_path / "commutator.json"
    p.write_text(json.dumps({"[1,2]": "1", "[2,1]": "-1"}))
    return p


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "[V,X1]*X2")
    assert code == 0 and out.strip() == "-X1*V*X2 + V*X1*X2"
    code, out, _ = run(capsys, "normalize", "X1", "--n", "3", "--json")
    assert json.loads(out)["n"] == 3


def test_eval(capsys, tmp_path):
    assign = tmp_path / "a.json"
    assign.write_text(json.dumps({"x": ["v", "w"]}))
    code, out, _ = run(capsys, "eval", "[X1,X2]", "--assign", str(assign))
    assert code == 0 and out.strip() == "1"
    assign.write_text(json.dumps({"x": ["w"], "u": {"2": "1"}}))
    code, out, _ = run(capsys, "eval", "U*X1", "--assign", str(assign), "--json")
    assert json.loads(out)["value"] == [[2, 1, "1"]]


def test_solve_weyl(capsys, commutator_file, tmp_path):
    trace = tmp_path / "trace.json"
    code, out, _ = run(capsys, "solve", "--poly", str(commutator_file), "--target", "1",
                       "--backend", "weyl", "--trace", str(trace))
    assert code == 0
    payload = json.loads(out)
    assert payload["verified"] is True
    f = poly_from_json(json.loads(commutator_file.read_text()))
    assert verify(f, witness_from_json(payload, WeylAlgebra()), parse_weyl("1"))
    assert json.loads(trace.read_text())["steps"][0]["kind"] == "split"


@pytest.mark.parametrize("backend,extra", [("shift", ["--probe", "6"]),
                                           ("product", ["--components", "weyl,shift", "--probe", "4"])])
def test_solve_other_backends(capsys, commutator_file, backend, extra):
    code, out, _ = run(capsys, "solve", "--poly", str(commutator_file), "--target", "1 + v^2",
                       "--backend", backend, "--json", *extra)
    assert code == 0 and json.loads(out)["verified"] is True


def test_independence(capsys):
    code, out, _ = run(capsys, "independence", "--n", "2", "--r", "1", "--kind", "two")
    assert code == 0 and out.strip() == "rank 8 of 8 (independent)"


def test_gen_system(capsys):
    code, out, _ = run(capsys, "gen-system", "--paper-example")
    assert code == 0
    assert "m^1_(0,1) + 2*m^1_(1,0) + m^2_(2,-1) = 0" in out
    assert "kernel dimension: 0" in out
    code, out, _ = run(capsys, "gen-system", "--n", "3", "--r", "1", "--kmax", "3",
                       "--sigma", "3,1,2", "--json")
    assert json.loads(out)["kernel_dimension"] == 0


def test_verify_identities(capsys):
    for label in ("4.3", "4.4", "4.5", "4.6", "bin", "marked-word"):
        code, out, _ = run(capsys, "verify-identities", "--lemma", label, "--n", "2",
                           "--r", "1", "--kmax", "2")
        assert code == 0, out
        assert "FAIL" not in out
    code, out, _ = run(capsys, "verify-identities", "--lemma", "4.6", "--samples", "5",
                       "--seed", "7", "--json")
    assert json.loads(out)["instances"] == 5


@pytest.mark.parametrize("argv", [
    ["normalize", "[X1,"],
    ["gen-system", "--n", "2"],
    ["gen-system", "--n", "2", "--r", "1", "--kmax", "1", "--sigma", "1,1"],
    ["eval", "X1", "--assign", "/nonexistent.json"],
    ["independence", "--n", "0", "--r", "1", "--kind", "one"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_zero_polynomial_is_a_usage_error(capsys, tmp_path):
    p = tmp_path / "zero.json"
    p.write_text(json.dumps({"[1,2]": "0"}))
    code, _, err = run(capsys, "solve", "--poly", str(p), "--target", "1")
    assert code == 2


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["verify-identities", "--lemma", "9.9"])
    assert info.value.code == 2


def test_console_entry_point(commutator_file):
    proc = subprocess.run([sys.executable, "-m", "surjpoly.cli", "solve", "--poly",
                           str(commutator_file), "--target", "v*w", "--json"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verified"] is True


def test_exit_code_for_failed_verification(capsys, commutator_file, monkeypatch):
    import surjpoly.cli as cli
    monkeypatch.setattr(cli, "verify", lambda *a: False)
    code, out, _ = run(capsys, "solve", "--poly", str(commutator_file), "--target", "1")
    assert code == 1 and json.loads(out)["verified"] is False


def test_exit_code_for_soundness_failure(capsys, tmp_path, monkeypatch):
    import surjpoly.solver as solver
    p = tmp_path / "two.json"
    p.write_text(json.dumps({"n": 2, "r": 0, "kind": "two",
                             "terms": [{"sigma": [1, 2], "b": [0, 0], "i": 1, "coef": "1"}]}))
    monkeypatch.setattr(solver, "k_search_cap", lambda n: 0)
    code, _, err = run(capsys, "solve", "--poly", str(p), "--target", "1")
    assert code == 3 and "soundness" in err
