"""Command line: exit codes, report envelope, byte-identical JSON."""

import json

import pytest

from semiconj.cli import main, run

CHEB = ["--A", "2*z^2-1", "--B", "z^2", "--X", "(z+1/z)/2"]


def test_check_pass(capsys):
    code, rep = run(["check", *CHEB])
    assert code == 0
    assert rep["schema"] == 1 and rep["verdict"] == "pass"
    assert rep["results"]["semiconjugate"] is True and rep["results"]["primitive"] is True
    assert "check: pass" in capsys.readouterr().out


def test_check_fail():
    code, rep = run(["check", "--A", "z^3", "--B", "z^2", "--X", "(z+1/z)/2"])
    assert code == 1 and rep["results"]["semiconjugate"] is False


def test_genus_report():
    code, rep = run(["genus", "--f", "z^4+z"])
    r = rep["results"]
    assert code == 0
    assert (r["chi"], r["genus_class"], r["galois_genus"], r["group_order"]) == ("-1/4", "two_or_more", 4, 24)


def test_parse_error_exit_two(capsys):
    assert main(["check", "--A", "z^", "--B", "z", "--X", "z"]) == 2
    assert "position" in capsys.readouterr().err


def test_usage_error_exit_two():
    assert main(["check", "--A", "z^2"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["genus", "--f", "z+1"]) == 2


def test_non_solution_triple_fails_not_crashes():
    assert main(["theorem61", "--A", "z^3", "--B", "z^2", "--X", "(z+1/z)/2"]) == 1


def test_triple_file(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"A": "2*z^2-1", "B": "z^2", "X": "(z+1/z)/2"}))
    code, rep = run(["theorem61", "--triple", str(p)])
    assert code == 0 and rep["results"]["checks"]["X_covering_O1X_to_O2X"]


def test_primitivity_exit_codes():
    assert main(["primitivity", "--X", "(z+1/z)/2", "--B", "z^2"]) == 0
    code, rep = run(["primitivity", "--X", "(z^2+1/z^2)/2", "--B", "z^2"])
    assert code == 1 and rep["results"]["luroth_generator"] == "z^2"


@pytest.mark.parametrize("argv", [
    ["orbifold", "--f", "2*z^2-1"],
    ["monodromy", "--f", "z^4+z", "--k", "2"],
    ["poincare", "--f", "z^2", "--z0", "1"],
    ["poincare", *CHEB],
    ["invariance", *CHEB, "--samples", "10"],
    ["reduce", "--A", "2*z^2-1", "--B", "z^2", "--X", "(z^2+1/z^2)/2"],
    ["corpus", "list"],
])
def test_subcommands_pass(argv):
    assert main(argv) == 0


def test_byte_identical_json(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["invariance", *CHEB, "--samples", "10", "--seed", "7", "--json", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert "timing_seconds" not in rep and rep["parameters"]["seed"] == 7


def test_timing_flag(tmp_path):
    p = tmp_path / "t.json"
    main(["check", *CHEB, "--timing", "--json", str(p)])
    assert "timing_seconds" in json.loads(p.read_text())


def test_leading_minus_expression():
    code, rep = run(["check", "--A", "-z^2", "--B", "z^2", "--X", "-z"])
    assert code == 0 and rep["inputs"]["X"] == "-z"


def test_every_result_has_provenance():
    for argv in (["check", *CHEB], ["genus", "--f", "z^3"], ["theorem61", *CHEB]):
        _, rep = run(argv)
        assert set(rep["provenance"]) == set(rep["results"])
        assert "see value" not in rep["provenance"].values()
