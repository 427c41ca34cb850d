import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from ratrecover.cli import PLAN_SCHEMA, RECOVERY_SCHEMA, SWEEP_SCHEMA, main, read_poly_input
from ratrecover.planner import PrecisionPlan
from ratrecover.recovery import RecoveryResult
from ratrecover.sweep import SweepReport

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_plan_text(capsys):
    code, out, _ = run(capsys, "plan", "-N", "170")
    assert code == 0
    assert "1/9883120" in out
    code, out, _ = run(capsys, "plan", "-N", "2")
    assert code == 0 and "delta: 1/16" in out


def test_plan_rejects_small_bound(capsys):
    code, _, err = run(capsys, "plan", "-N", "1")
    assert code == 2
    assert "N >= 2" in err


def test_plan_json_round_trip(capsys):
    code, out, _ = run(capsys, "--format", "json", "plan", "-N", "65")
    data = json.loads(out)
    jsonschema.validate(data, PLAN_SCHEMA)
    assert PrecisionPlan.from_dict(data).inverse_delta == 557440


@pytest.mark.parametrize("literal, n, expected", [
    ("0.8106507864", "170", "137/169"),
    ("1.882434634", "18", "32/17"),
    ("0.1788708777", "1790", "320/1789"),
])
def test_recover_text(capsys, literal, n, expected):
    code, out, _ = run(capsys, "recover", literal, "-N", n)
    assert code == 0
    assert out.splitlines()[0] == expected


def test_recover_json(capsys):
    code, out, _ = run(capsys, "recover", "1.882434634", "-N", "18", "--json")
    data = json.loads(out)
    jsonschema.validate(data, RECOVERY_SCHEMA)
    result = RecoveryResult.from_dict(data)
    assert result.value == Fraction(32, 17)
    assert result.terminating_quotient == 41
    # format flag after the subcommand works too
    code, out2, _ = run(capsys, "recover", "1.882434634", "-N", "18", "--format", "json")
    assert json.loads(out2) == data


def test_recover_contract_violation(capsys):
    code, _, err = run(capsys, "recover", "0.7", "-N", "2")
    assert code == 3
    assert "denominator" in err


def test_recover_bad_literal(capsys):
    code, _, _ = run(capsys, "recover", "0.7e3", "-N", "5")
    assert code == 2


def test_expand_and_eval(capsys):
    assert run(capsys, "expand", "137/169")[1].strip() == "[0; 1, 4, 3, 1, 1, 4]"
    assert run(capsys, "expand", "--", "-7/3")[1].strip() == "[-3; 1, 2]"
    assert run(capsys, "eval", "0,1,4,3,1,1,3,1")[1].strip() == "137/169"
    assert run(capsys, "eval", "1", "1", "7", "1", "1")[1].strip() == "32/17"
    code, out, _ = run(capsys, "--format", "json", "eval", "[5]")
    assert json.loads(out) == {"quotients": [5], "value": "5/1"}
    assert run(capsys, "eval", "1,0,2")[0] == 2


def test_poly_recover_example(capsys):
    code, out, _ = run(capsys, "poly-recover", str(DATA / "example4_factors.txt"),
                       "--verify", str(DATA / "example4_p.txt"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "g1 = x + 5/8*y + 9/8*z + 1/2"
    assert lines[1] == "g2 = x - 9/8*y - 3/8*z - 1/2"
    assert "scalar = 64/1" in lines
    assert lines[-1] == "VERIFIED"


def test_poly_recover_bound_from_original(tmp_path, capsys):
    src = (DATA / "example4_factors.txt").read_text().replace("N = 65", "")
    f = tmp_path / "f.txt"
    f.write_text(src.replace("accuracy = 1/557440", ""))
    code, out, _ = run(capsys, "--format", "json", "poly-recover", str(f), "--verify", str(DATA / "example4_p.txt"))
    data = json.loads(out)
    assert code == 0 and data["verified"] and data["n_bound"] == 64


def test_poly_recover_exact_decimals(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("N = 4\nx + 0.25*y - 0.5\n")
    code, out, _ = run(capsys, "poly-recover", str(f))
    assert code == 0
    assert out.strip() == "g1 = x + 1/4*y - 1/2"


def test_poly_recover_tampered(tmp_path, capsys):
    text = (DATA / "example4_factors.txt").read_text()
    broken = tmp_path / "broken.txt"
    broken.write_text(text.replace(".6250000000067", ".626"))
    code, _, err = run(capsys, "poly-recover", str(broken), "--verify", str(DATA / "example4_p.txt"))
    assert code == 3 and "y" in err
    wrong = tmp_path / "wrong.txt"
    wrong.write_text(text.replace(".6250000000067", ".6000000000000"))
    code, out, _ = run(capsys, "poly-recover", str(wrong), "--verify", str(DATA / "example4_p.txt"))
    assert code == 3
    assert out.splitlines()[-1] == "VERIFICATION FAILED"


def test_poly_recover_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO((DATA / "example4_factors.txt").read_text()))
    code, out, _ = run(capsys, "poly-recover")
    assert code == 0 and "g2 = x - 9/8*y - 3/8*z - 1/2" in out


def test_poly_recover_needs_bound(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("x + 0.25*y\n")
    assert run(capsys, "poly-recover", str(f))[0] == 2


def test_read_poly_input():
    bound, acc, polys = read_poly_input("# c\nN = 7\naccuracy = 1/100\nx + 1  # tail\n\n")
    assert (bound, acc, polys) == (7, Fraction(1, 100), ["x + 1"])


def test_sweep_csv_and_json(tmp_path, capsys):
    code, out, _ = run(capsys, "--seed", "3", "sweep", "--n-max", "5", "--trials", "3", "--scales", "1/2,50")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n_bound,scale,trials,successes"
    assert len(lines) == 1 + 4 * 2
    code, out, _ = run(capsys, "--format", "json", "sweep", "--n-max", "4", "--trials", "2", "--scales", "1/2")
    data = json.loads(out)
    jsonschema.validate(data, SWEEP_SCHEMA)
    assert len(SweepReport.from_dict(data).rows) == 3
    target = tmp_path / "r.csv"
    code, out, _ = run(capsys, "sweep", "--n-max", "3", "--trials", "1", "--scales", "1", "-o", str(target))
    assert code == 0 and target.read_text().startswith("n_bound,scale")


def test_sweep_bad_scales(capsys):
    assert run(capsys, "sweep", "--scales", "0")[0] == 2
    assert run(capsys, "sweep", "--scales", "abc")[0] == 2


def test_sweep_deterministic_bytes(capsys):
    args = ("--seed", "9", "sweep", "--n-max", "6", "--trials", "4", "--scales", "1/2,50")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_usage_errors_exit_2():
    proc = subprocess.run([sys.executable, "-m", "ratrecover.cli", "recover"], capture_output=True)
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "ratrecover.cli", "plan", "-N", "170"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "1/9883120" in proc.stdout
