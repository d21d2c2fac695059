import json
import subprocess
import sys

from crystorsion.cli import (EXIT_BUDGET, EXIT_COCYCLE, EXIT_OK, EXIT_PARSE, EXIT_TORSION, main)


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build(capsys):
    code, out, _ = run(capsys, "build", "--descriptor", "Xi(p=2,i=0)")
    assert code == EXIT_OK
    assert json.loads(out)["rank"] == 4


def test_parse_errors(capsys):
    assert run(capsys, "build", "--descriptor", "Xi(p=4,i=0)")[0] == EXIT_PARSE
    assert run(capsys, "build")[0] == EXIT_PARSE
    assert run(capsys, "frobnicate")[0] == EXIT_PARSE
    assert run(capsys, "theorem2", "--p", "4")[0] == EXIT_PARSE
    assert run(capsys, "h1", "--descriptor", "Xi(p=3,i=1)", "--budget", "0")[0] == EXIT_PARSE


def test_h1(capsys):
    code, out, _ = run(capsys, "h1", "--descriptor", "Xi(p=3,i=1)")
    assert code == EXIT_OK and json.loads(out)["invariant_factors"] == [3]
    code, out, _ = run(capsys, "h1", "--descriptor", "Y0(p=3)")
    assert json.loads(out)["invariant_factors"] == []


def test_certify_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "--descriptor", "Xi(p=3,i=0)")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "torsion_free"
    code, out, _ = run(capsys, "certify", "--descriptor", "U0(p=3)")
    assert code == EXIT_TORSION
    rep = json.loads(out)
    assert rep["subgroups"][0]["witness"]["order"] == 3
    assert run(capsys, "certify", "--descriptor", "U0(p=3)", "--cocycle", "zero")[0] == EXIT_TORSION
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([["1/8", "0", "0", "0"]]))
    assert run(capsys, "certify", "--descriptor", "Xi(p=2,i=0)", "--cocycle", str(bad))[0] \
        == EXIT_COCYCLE
    assert run(capsys, "certify", "--descriptor", "Xi(p=2,i=0)", "--cocycle", "nope")[0] \
        == EXIT_PARSE


def test_budget_exit(capsys):
    assert run(capsys, "theorem2", "--p", "7")[0] == EXIT_BUDGET
    assert run(capsys, "theorem3", "--n-max", "4")[0] == EXIT_BUDGET


def test_theorem2_formats(capsys):
    code, out, _ = run(capsys, "theorem2", "--p", "3")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["total"] == 3 and rep["matches"]
    code, out, _ = run(capsys, "theorem2", "--p", "3", "--format", "tsv")
    lines = out.splitlines()
    assert lines[0].split("\t")[0] == "module"
    assert lines[-1].split("\t")[3] == "3"
    code, out, _ = run(capsys, "theorem2", "--p", "3", "--format", "text")
    assert out.splitlines()[-1].startswith("total")


def test_out_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["theorem2", "--p", "3", "--seed", "5", "--out", str(a)]) == EXIT_OK
    assert main(["theorem2", "--p", "3", "--seed", "5", "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_theorem3_small(capsys):
    code, out, _ = run(capsys, "theorem3", "--n-max", "1", "--format", "tsv")
    assert code == EXIT_OK
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    counts = {(r[0], r[1]): int(r[6]) for r in rows}
    assert counts == {("DeltaN", "1"): 1, ("WNStar", "0"): 1, ("WNStar", "1"): 2,
                      ("DeltaNStar", "1"): 1, ("WN", "0"): 0, ("WN", "1"): 1}


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "crystorsion.cli", "build", "--descriptor",
                        "U0(p=2)", "--format", "text"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "U0(p=2)" in r.stdout
