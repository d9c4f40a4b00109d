"""CLI: subcommands, formats, exit codes, env-var prime, determinism."""

import json

import pytest

from stab3.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_exterior_human(capsys):
    code, out, _ = run(capsys, "table", "--prime", "7")
    assert code == 0
    assert "dim_cohomology" in out
    # ten rows of data plus header
    assert len(out.strip().splitlines()) == 11


def test_table_csv_header(capsys):
    code, out, _ = run(capsys, "table", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "s,dim_cochains,dim_cohomology,nonzero_sectors"


def test_table_cobar(capsys):
    code, out, _ = run(capsys, "table", "--model", "cobar", "--prime", "5",
                       "--max-s", "2", "--may-bound", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "s,t,w,dim_cochains,dim_cohomology"
    assert len(out.splitlines()) > 1


def test_verify_subset_json(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code = main(["verify", "--prime", "7", "--suite", "generator-classes",
                 "--suite", "trivial-lemma", "--output", str(out_file)])
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["meta"]["prime"] == 7
    assert all(c["status"] == "pass" for c in report["checks"])
    names = {c["name"] for c in report["checks"]}
    assert names == {"generator-classes", "trivial-lemma"}


def test_verify_human_format(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "shift-cycle", "--format", "human")
    assert code == 0
    assert out.startswith("PASS")


def test_verify_unknown_suite_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nonsense")
    assert code == 2
    assert "unknown suite" in err


def test_verify_deterministic_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "--prime", "7", "--suite", "generator-classes",
                     "--output", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_greek_table(capsys):
    code, out, _ = run(capsys, "greek", "--prime", "7", "--t-range", "1..14",
                       "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("t,bidegree_n,bidegree_tA,")
    assert len(lines) == 15
    assert all(line.endswith("agree") for line in lines[1:])


def test_greek_bidegree(capsys):
    code, out, _ = run(capsys, "greek", "--prime", "7", "--bidegree", "1,1,1,2")
    assert code == 0
    assert out.strip() == "(3, 1260)"


def test_greek_p5_warning(capsys):
    code, _, err = run(capsys, "greek", "--prime", "5", "--t-range", "1..5")
    assert "not guaranteed" in err


def test_bad_prime_is_usage_error(capsys):
    for bad in ("4", "3", "9"):
        code, _, err = run(capsys, "table", "--prime", bad)
        assert code == 2
        assert "must be a prime > 3" in err


def test_unknown_flag_is_usage_error(capsys):
    code, _, _ = run(capsys, "table", "--bogus")
    assert code == 2


def test_env_var_prime_default(capsys, monkeypatch):
    monkeypatch.setenv("STAB3_PRIME", "11")
    code, out, _ = run(capsys, "greek", "--t-range", "1..1", "--format", "json")
    assert code == 0
    assert json.loads(out)["meta"]["prime"] == 11
    # explicit flag wins over the environment
    code, out, _ = run(capsys, "greek", "--prime", "7", "--t-range", "1..1",
                       "--format", "json")
    assert json.loads(out)["meta"]["prime"] == 7
