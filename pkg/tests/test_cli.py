import json
import subprocess
import sys

import pytest

from opforge import __version__
from opforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_ce_sl2_betti(capsys):
    code, rep = run_json(capsys, "ce", "--input", "sl2")
    assert code == 0 and rep["ok"]
    assert rep["result"]["betti"] == [1, 0, 0, 1]
    assert rep["version"] == __version__
    assert rep["bounds"] == {"max_arity": 5, "max_weight": 6}


def test_ce_from_json_file(capsys, files):
    path = files("h3.json", json.dumps({"name": "h3", "degrees": [0, 0, 0], "bracket": [[0, 1, [[2, "1"]]]]}))
    code, rep = run_json(capsys, "ce", "--input", path)
    assert code == 0 and rep["result"]["betti"] == [1, 2, 2, 1]


def test_mc_check_kappa(capsys):
    code, rep = run_json(capsys, "mc-check", "--morphism", "kappa", "--max-arity", "6")
    assert code == 0
    residuals = rep["certificates"][0]["details"]
    assert all(v["residual_nonzeros"] == 0 for v in residuals.values())


def test_mc_check_mutant_fails_at_three(capsys):
    code, rep = run_json(capsys, "mc-check", "--max-arity", "4", "--debug-inject", "kappa-sign")
    assert code == 1
    assert rep["certificates"][0]["first_failure"] == 3
    assert rep["debug_inject"] == ["kappa-sign"]


def test_homology_not_a_complex(capsys, files):
    path = files("bad.json", '{"dims": {"0": 1, "1": 1, "2": 1}, "diff": {"1": [[0, 0, "1"]], "2": [[0, 0, "1"]]}}')
    code, rep = run_json(capsys, "homology", "--input", path)
    assert code == 2 and rep["error"]["type"] == "NotAComplex"


def test_homology_and_degree_window(capsys, files):
    path = files("s.json", '{"dims": {"0": 2, "1": 1, "2": 1}, "diff": {"2": [[0, 0, "1"]]}}')
    code, rep = run_json(capsys, "homology", "--input", path, "--degrees", "0:0")
    assert code == 0 and rep["result"]["homology"] == {"0": 2}
    assert rep["bounds"]["degrees"] == [0, 0]


def test_parse_error_reports_position(capsys, files):
    path = files("broken.json", '{"dims": {"0": 1,\n "diff": }')
    code, rep = run_json(capsys, "homology", "--input", path)
    assert code == 2 and rep["error"]["type"] == "ParseError"
    assert "line 2, column 10" in rep["error"]["message"]


@pytest.mark.parametrize("argv", [
    ["homology"],
    ["homology", "--input", "/nonexistent.json"],
    ["ce", "--input", "abelian:x"],
    ["ce", "--input", "abelian:0"],
    ["bar", "--input", "sl2", "--degrees", "2:1"],
    ["bar", "--input", "sl2", "--degrees", "nope"],
    ["bar", "--input", "sl2", "--max-weight", "0"],
    ["koszul-check", "--jobs", "zero"],
    ["selftest", "--only", "12"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_lie_json_errors_exit_2(capsys, files):
    path = files("bad_lie.json", json.dumps({"degrees": [0, 0, 0], "bracket": [[0, 1, [[2, "1"]]], [1, 2, [[0, "1"]]],
                                                                                    [0, 2, [[0, "1"]]]]}))
    code, rep = run_json(capsys, "ce", "--input", path)
    assert code == 2 and rep["error"]["type"] == "JacobiFailure"


def test_bar_and_cobar(capsys, files):
    code, rep = run_json(capsys, "bar", "--input", "sl2", "--max-weight", "3")
    assert code == 0 and rep["result"]["gr_homology"]["3"] == {"2": 1}
    path = files("h3w.json", json.dumps({"name": "h3w", "degrees": [0, 0, 0], "weights": [1, 1, 2],
                                         "bracket": [[0, 1, [[2, "1"]]]]}))
    code, rep = run_json(capsys, "cobar", "--input", path, "--max-weight", "3")
    assert code == 0 and rep["result"]["counit_checked"]
    assert [c["check"] for c in rep["certificates"]] == ["d^2=0", "cobar-bar"]


def test_koszul_and_tangent(capsys):
    assert run(capsys, "koszul-check", "--max-arity", "3")[0] == 0
    assert run(capsys, "koszul-check", "--morphism", "free-cofree", "--max-weight", "3")[0] == 0
    assert run(capsys, "tangent-roundtrip", "--input", "heisenberg3")[0] == 0


def test_reports_are_deterministic_across_jobs(capsys):
    _, a = run(capsys, "koszul-check", "--max-arity", "4", "--format", "json", "--jobs", "1")
    _, b = run(capsys, "koszul-check", "--max-arity", "4", "--format", "json", "--jobs", "2")
    _, c = run(capsys, "koszul-check", "--max-arity", "4", "--format", "json", "--jobs", "1")
    assert a == b == c


def test_jobs_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("OPFORGE_JOBS", "2")
    code, _ = run(capsys, "koszul-check", "--max-arity", "3")
    assert code == 0
    monkeypatch.setenv("OPFORGE_JOBS", "x")
    assert run(capsys, "koszul-check", "--max-arity", "3")[0] == 2


def test_selftest_subset_and_injection(capsys):
    code, rep = run_json(capsys, "selftest", "--only", "2,6")
    assert code == 0 and rep["result"]["criteria"] == {"2": True, "6": True}
    code, rep = run_json(capsys, "selftest", "--only", "1", "--debug-inject", "tensor-sign")
    assert code == 1 and rep["certificates"][0]["first_failure"] == "tensor"


def test_text_format(capsys):
    code, out = run(capsys, "ce", "--input", "abelian:2")
    assert code == 0
    assert out.splitlines()[0].startswith(f"opforge {__version__} ce")
    assert "PASS ce-duality" in out and out.rstrip().endswith("OK")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "opforge", "ce", "--input", "abelian:1", "--format", "json"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["betti"] == [1, 1]
