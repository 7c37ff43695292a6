import csv
import io
import json
import math

import pytest

from opm4.cli import main, parse_angle, parse_scalar, UsageError
from opm4.verify import CONCLUSION_M


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "text, value",
    [("pi", math.pi), ("-pi", -math.pi), ("pi/4", math.pi / 4), ("3pi/2", 1.5 * math.pi), ("0.5", 0.5)],
)
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value)


@pytest.mark.parametrize("bad", ["", "tau", "pi/", "--1"])
def test_parse_angle_rejects(bad):
    with pytest.raises(UsageError):
        parse_angle(bad)


def test_parse_scalar():
    assert str(parse_scalar("2/5", False)) == "2/5"
    assert str(parse_scalar("0.4", False)) == "2/5"
    assert parse_scalar("0.4", True) == 0.4
    with pytest.raises(UsageError):
        parse_scalar("1/0", False)


def test_gen_grover(capsys):
    code, out, _ = run(capsys, "gen", "grover")
    assert code == 0
    rows = json.loads(out)
    assert rows[0] == ["-1/2", "1/2", "1/2", "1/2"]
    assert {v for r in rows for v in r} == {"-1/2", "1/2"}


def test_gen_named_member(capsys):
    code, out, _ = run(capsys, "gen", "X1", "--x", "2/5", "--z", "4/5")
    assert code == 0
    assert json.loads(out)[0] == ["2/5", "-2/5", "4/5", "1/5"]


def test_gen_constraint_violation(capsys):
    code, _, err = run(capsys, "gen", "X1", "--x", "1/2", "--z", "0")
    assert code == 2
    assert "1/4" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("gen", "Q1", "--x", "0", "--z", "0"),
        ("gen", "X1", "--r", "2", "--pbar", "(12)"),
        ("gen", "X1"),
        ("gen", "X1theta"),
        ("gen", "C1"),
    ],
)
def test_gen_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_emitted_flags_survive_check(tmp_path, capsys):
    for argv in (("gen", "Y3", "--r", "3/2", "--pbar", "(234)"), ("gen", "Z1theta", "--theta", "pi/3"),
                 ("gen", "C2", "--c2", "1/4"), ("gen", "sporadic", "--tau", "(1234)", "--sign", "-1")):
        path = tmp_path / "m.json"
        assert main(list(argv) + ["--out", str(path)]) == 0
        code, out, _ = run(capsys, "check", str(path))
        rep = json.loads(out)
        assert code == 0 and rep["orthogonal"]
        assert rep["permutative"] == (argv[1] != "C2")


def test_classify_conclusion_and_grover(tmp_path, capsys):
    p = tmp_path / "m.json"
    p.write_text(json.dumps([[f"{v}/11" for v in r] for r in CONCLUSION_M]))
    code, out, _ = run(capsys, "classify", str(p))
    assert code == 0 and json.loads(out)["tag"] == "irreducible"
    run(capsys, "gen", "grover", "--out", str(p))
    code, out, _ = run(capsys, "classify", str(p))
    res = json.loads(out)
    assert code == 0 and res["tag"] == "permutative"
    assert res["witness"]["family"] == "X1"


def test_classify_errors(tmp_path, capsys):
    p = tmp_path / "j.json"
    p.write_text(json.dumps([[1] * 4] * 4))
    assert run(capsys, "classify", str(p))[0] == 3
    p.write_text("not json")
    assert run(capsys, "classify", str(p))[0] == 2
    assert run(capsys, "classify", str(tmp_path / "missing.json"))[0] == 2


def test_classify_decimal_input_is_snapped(tmp_path, capsys):
    p = tmp_path / "g.json"
    p.write_text(json.dumps([[-0.5 if i == j else 0.5 for j in range(4)] for i in range(4)]))
    code, out, _ = run(capsys, "classify", str(p))
    assert code == 0
    assert json.loads(out)["combination"][0]["coeff"] in ("1/2", "-1/2")


def test_decompose(tmp_path, capsys):
    p = tmp_path / "m.json"
    run(capsys, "gen", "grover", "--out", str(p))
    code, out, _ = run(capsys, "decompose", str(p))
    res = json.loads(out)
    assert code == 0 and res["in_span"]
    assert res["four_permutation_forms"]
    assert sum(len(part["members"]) for part in res["permutative_parts"]) <= 24


def test_partition(capsys):
    code, out, _ = run(capsys, "partition")
    classes = json.loads(out)
    assert code == 0 and len(classes) == 6
    assert len({m for c in classes for m in c["members"]}) == 24


def test_check_pattern(capsys):
    code, out, _ = run(capsys, "check", "--pattern", "1100,1011,0011,1110")
    assert code == 0 and json.loads(out)["quadrangular"] is False


def _csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sweep_theta(capsys):
    code, out, _ = run(capsys, "sweep", "X1theta", "--theta-start=-pi", "--theta-stop", "pi", "--step", "pi/4")
    rows = _csv(out)
    assert code == 0 and len(rows) == 9
    assert len(rows[0]) == 1 + 16 + 3
    assert all(float(r["orthogonality_residual"]) < 1e-12 for r in rows)
    assert all(abs(float(r["det"]) - 1) < 1e-12 for r in rows)
    zero = next(r for r in rows if float(r["parameter"]) == 0)
    # theta = 0 is the permutation (13)(24)
    assert [float(zero[f"a1{j}"]) for j in range(1, 5)] == [0, 0, 1, 0]


def test_sweep_rational(capsys):
    code, out, _ = run(capsys, "sweep", "X1", "--r", "1,2,3")
    rows = _csv(out)
    assert code == 0 and len(rows) == 3
    assert all(r["orthogonality_residual"] == "0.0" and r["permutative"] == "1" for r in rows)
    assert rows[1]["a11"] == "3/10"


@pytest.mark.parametrize(
    "argv",
    [("sweep", "X1", "--r", ""), ("sweep", "X1theta", "--step=-1"), ("sweep", "X1"), ("sweep", "X1", "--r", "0")],
)
def test_sweep_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_command(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "verify", "--samples", "0", "--json", str(out))
    assert code == 0
    assert json.loads(out.read_text())["samples"] == 0
    assert "pass" in text
