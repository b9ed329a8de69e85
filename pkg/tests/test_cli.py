import subprocess
import sys
from pathlib import Path

import pytest

from triavg.cli import main

ROOT = Path(__file__).resolve().parent.parent
FX = ROOT / "fixtures"


def run(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("args, code", [
    (("check", "triass", FX / "induced_kz2.alg"), 0),
    (("check", "triass", FX / "broken.alg"), 1),
    (("check", "assoc", FX / "broken_assoc.alg"), 1),
    (("check", "bimodule", FX / "broken_bimodule.alg"), 1),
    (("check", "averaging", FX / "broken_averaging.alg"), 1),
    (("check", "relative", FX / "broken_relative.alg"), 1),
    (("check", "averaging", "--weight", "2", FX / "kz2.alg"), 0),
    (("check", "averaging", "--weight", "3", FX / "kz2.alg"), 1),
    (("check", "relative", FX / "projection.alg"), 0),
    (("cohomology", "relative", FX / "dual.alg"), 0),
    (("les", FX / "projection.alg"), 0),
    (("mc", "pair", FX / "projection.alg"), 0),
    (("mc", "operator", FX / "broken_relative.alg"), 1),
    (("linf", "jacobi", FX / "super.alg"), 0),
    (("homotopy", "operator", FX / "projection.alg"), 0),
    (("deform", "classify", FX / "dual.alg"), 0),
    (("trees", "enumerate", "3"), 0),
    (("free", "normalize", "[ x ] [ y ]", "--weight", "2"), 0),
    (("check", "triass", ROOT / "missing.alg"), 2),
    (("trees", "enumerate", "9"), 2),
    (("trees", "face", "((| |)", "1"), 2),
    (("free", "normalize", "[ x", "--weight", "1"), 2),
    (("check", "triass", FX / "kz2.alg"), 2),
])
def test_exit_codes(capsys, args, code):
    got, out, err = run(capsys, *args)
    assert got == code, out + err
    if code == 2:
        assert err.startswith("error:") or "error" in err


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 2


def test_machine_format(capsys):
    code, out, _ = run(capsys, "check", "triass", FX / "broken.alg", "--format", "machine")
    assert code == 1
    rows = [line.split(" | ") for line in out.splitlines()]
    assert rows and all(len(r) == 4 and r[0] in ("PASS", "FAIL") for r in rows)
    assert any(r[0] == "FAIL" and r[1] == "algebras" for r in rows)


def test_trees_enumerate_output(capsys):
    _, out, _ = run(capsys, "trees", "enumerate", "3")
    lines = out.splitlines()
    assert len(lines) == 12 and lines[-1] == "|T_3| = 11"
    assert lines[0] == "0 (((| |) |) |)"
    _, out, _ = run(capsys, "trees", "face", "((| |) |)", "1")
    assert out.strip() == "(| |)"


def test_free_outputs(capsys):
    _, out, _ = run(capsys, "free", "normalize", "[ x ] [ y ]", "--weight", "2")
    assert out.strip() == "2 * [ x y ]"
    code, out, _ = run(capsys, "free", "eval", "[ x ] x", FX / "kz2.alg", "--gen", "x=1,0")
    assert code == 0 and out.splitlines()[0] == "[1 1]"


def test_cohomology_table(capsys):
    _, out, _ = run(capsys, "cohomology", "relative", FX / "dual.alg")
    lines = out.splitlines()
    assert lines[0] == "n | dim C | dim Z | dim B | dim H"
    assert [line.split(" | ")[-1] for line in lines[1:4]] == ["1", "1", "1"]


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "triavg", "linf", "jacobi", str(FX / "projection.alg"),
           "--format", "machine"]
    a = subprocess.run(cmd, capture_output=True, text=True, cwd=ROOT)
    b = subprocess.run(cmd, capture_output=True, text=True, cwd=ROOT)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout
