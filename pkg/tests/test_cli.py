import json
import subprocess
import sys

import pytest

from flattori.cli import run
from flattori.textio import (
    MatrixFormatError,
    dump_matrix,
    load_matrix,
    parse_rational,
)
from flattori.exact_linalg import RatMatrix

THETA_13 = '{"n":2,"m":2,"entries":[["0","1/3"],["-1/3","0"]]}'
THETA_23 = '{"n":2,"m":2,"entries":[["0","2/3"],["-2/3","0"]]}'
THETA_15 = '{"n":2,"m":2,"entries":[["0","1/5"],["-1/5","0"]]}'


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_rational():
    assert parse_rational("-1/3") == -parse_rational("1/3")
    assert parse_rational("4/6") == parse_rational("2/3")  # silently reduced
    assert parse_rational("7") == 7
    for bad in ("1.5", "a", "1/ 2", "--3", "1/0", ""):
        with pytest.raises(MatrixFormatError):
            parse_rational(bad)


def test_matrix_round_trip():
    m = RatMatrix([["1/2", "-3"], ["0", "7/5"]])
    assert load_matrix(json.dumps(dump_matrix(m))) == m


def test_q_theta_cli(capsys):
    code, out, _ = invoke(capsys, "q-theta", "--theta", THETA_13)
    assert code == 0 and out == "3\n"


def test_matrix_from_file(tmp_path, capsys):
    path = tmp_path / "theta.json"
    path.write_text(THETA_13, encoding="ascii")
    code, out, _ = invoke(capsys, "q-theta", "--theta", str(path))
    assert code == 0 and out == "3\n"
    code, _, err = invoke(capsys, "q-theta", "--theta", str(tmp_path / "nope.json"))
    assert code == 2
    code, out, _ = invoke(capsys, "q-theta", "--theta",
                          '{"n":2,"m":2,"entries":[["0","0"],["0","0"]]}')
    assert code == 0 and out == "1\n"


def test_iso_cli_positive(capsys):
    code, out, _ = invoke(capsys, "--format", "records", "iso",
                          "--theta", THETA_13, "--theta-prime", THETA_23)
    assert code == 0
    rec = json.loads(out)
    assert rec["isomorphic"] is True
    T = load_matrix(json.dumps(rec["T"]))
    shift = load_matrix(json.dumps(rec["shift"]))
    # verify the emitted certificate literally
    theta = load_matrix(THETA_13)
    theta2 = load_matrix(THETA_23)
    lhs = T @ theta @ T.transpose() + shift
    assert lhs == theta2


def test_iso_cli_negative_exit_code(capsys):
    code, out, _ = invoke(capsys, "iso", "--theta", THETA_15,
                          "--theta-prime", '{"n":2,"m":2,"entries":[["0","2/5"],["-2/5","0"]]}')
    assert code == 1
    assert "not isomorphic" in out


def test_iso_cli_undecided_exit_code(capsys):
    code, out, _ = invoke(capsys, "iso", "--theta", THETA_15, "--theta-prime",
                          '{"n":2,"m":2,"entries":[["0","2/5"],["-2/5","0"]]}',
                          "--cap", "1")
    assert code == 3
    assert "undecided" in out


def test_twist_cli(capsys):
    code, out, _ = invoke(capsys, "twist", "--q", "3", "--a", "1")
    assert code == 0 and out == "-1\n"
    code, out, _ = invoke(capsys, "twist", "--q", "3", "--a", "1",
                          "--method", "clutching")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# method=clutching samples=")
    assert lines[1] == "-1"


def test_omega_cli(capsys):
    code, out, _ = invoke(capsys, "omega", "--q", "3", "--a", "1")
    assert code == 0 and out == "2/3\n"
    code, out, _ = invoke(capsys, "omega", "--q", "3", "--a", "1",
                          "--method", "clutching")
    assert code == 0 and out.splitlines()[1] == "2/3"


def test_parse_error_exit_code(capsys):
    code, _, err = invoke(capsys, "q-theta", "--theta",
                          '{"n":2,"m":2,"entries":[["0","1.5"],["-3/2","0"]]}')
    assert code == 2
    assert "error" in err


def test_usage_error_exit_code(capsys):
    assert run(["no-such-command"]) == 2


def test_table_q5(capsys):
    code, out, _ = invoke(capsys, "table", "--q", "5")
    assert code == 0
    assert "pairwise non-isomorphic matrix classes: 5/5" in out
    code, out, _ = invoke(capsys, "--format", "records", "table", "--q", "5")
    rec = json.loads(out)
    assert rec["distinct_matrix_classes"] == 5
    assert [r["twist"] for r in rec["rows"]] == [0, -1, -2, -3, -4]


def test_determinism(capsys):
    outs = set()
    for _ in range(3):
        code, out, _ = invoke(capsys, "--format", "records", "normal-form",
                              "--theta", THETA_13)
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_rep_cli(capsys):
    code, out, _ = invoke(capsys, "--format", "records", "rep", "--theta", THETA_13)
    assert code == 0
    rec = json.loads(out)
    assert rec["dim"] == 3
    assert rec["blocks"] == ["1/3"]
    assert len(rec["generators"]) == 2


def test_classify_cli(capsys):
    code, out, _ = invoke(capsys, "--format", "records", "classify",
                          "--kind", "vector", "--n", "2", "--q", "3",
                          "--form", '{"n":2,"m":2,"entries":[["0","-1"],["1","0"]]}')
    assert code == 0
    rec = json.loads(out)
    assert rec == {"kind": "vector", "n": 2, "q": 3,
                   "form": {"n": 2, "m": 2, "entries": [["0", "-1"], ["1", "0"]]}}
    # non-alternating input is refused
    code, _, err = invoke(capsys, "classify", "--kind", "vector", "--n", "2",
                          "--q", "3",
                          "--form", '{"n":2,"m":2,"entries":[["0","1"],["1","0"]]}')
    assert code == 2


def test_cocycle_check_cli(capsys):
    code, out, _ = invoke(capsys, "cocycle-check", "--q", "4", "--a", "3",
                          "--trials", "50")
    assert code == 0
    assert out == "violations: 0/50\n"
    code, out, _ = invoke(capsys, "--format", "records", "cocycle-check",
                          "--q", "2", "--a", "1", "--trials", "10")
    rec = json.loads(out)
    assert rec["violations"] == []
    # generator dump: (gamma, perm, phases) records
    assert rec["factor"][1]["gamma"] == [0, 1]
    assert rec["factor"][1]["perm"] == [1, 0]
    assert rec["factor"][1]["phases"][0] == ["-1", "0", "0"]


def test_dump_samples_csv(tmp_path, capsys):
    path = tmp_path / "loop.csv"
    code, _, _ = invoke(capsys, "twist", "--q", "2", "--a", "1",
                        "--method", "clutching", "--samples", "64",
                        "--dump-samples", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "t,row,col,re,im"
    assert len(lines) == 1 + 65 * 4  # (samples+1) * q^2 entries


def test_console_entry_point(capsys):
    proc = subprocess.run(
        [sys.executable, "-m", "flattori.cli", "twist", "--q", "3", "--a", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "-2\n"
