from fractions import Fraction
from pathlib import Path

import pytest

from triavg.fixtures import RAVG_FIXTURES, SMALL_ALGEBRAS, induced_kz2
from triavg.formats import (AlgFile, FormatError, dump, dumps, from_assoc, from_ravg,
                            from_triass, load, loads, same)

FIXTURES = sorted(Path(__file__).resolve().parent.parent.joinpath("fixtures").glob("*.alg"))


def test_fixture_files_present():
    assert len(FIXTURES) >= 14


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_round_trip(path):
    f = load(path)
    assert same(loads(dumps(f)), f)
    assert dumps(loads(dumps(f))) == dumps(f)


@pytest.mark.parametrize("name", sorted(RAVG_FIXTURES))
def test_in_memory_round_trip(name, tmp_path):
    s = RAVG_FIXTURES[name]()
    p = tmp_path / "x.alg"
    dump(from_ravg(s), p)
    back = load(p).ravg()
    assert back.lam == s.lam and back.P == s.P
    assert back.bimodule.nu == s.bimodule.nu and back.bimodule.l == s.bimodule.l


def test_assoc_and_triass_constructors():
    for f in SMALL_ALGEBRAS.values():
        assert loads(dumps(from_assoc(f()))).assoc.mu == f().mu
    d = induced_kz2()
    assert loads(dumps(from_triass(d))).triass.tensors() == d.tensors()


def test_rational_coefficients_and_comments():
    f = loads("dims A=1  # one\nweight -1/2\n[assoc]\nmu 0 0 0 3/4\n")
    assert f.weight == Fraction(-1, 2)
    assert f.assoc.mu[0][0][0] == Fraction(3, 4)


@pytest.mark.parametrize("text, line", [
    ("dims A=1\n[assoc]\nmu 0 0 0 1\nmu 0 0 0 2\n", 4),
    ("dims A=1\n[assoc]\nmu 0 0 1 1\n", 3),
    ("dims A=1\n\n[bogus]\n", 3),
    ("dims A=1\nmu 0 0 0 1\n", 2),
    ("dims A=1\n[assoc]\nmu 0 0 0 x\n", 3),
    ("dims A=1\n[assoc]\nmu 0 0 -1 1\n", 3),
    ("dims A=1\n[assoc]\nmu 0 0 1\n", 3),
    ("dims A=1\n[assoc]\nl 0 0 0 1\n", 3),
    ("dims A=1\nweight 1\nweight 2\n", 3),
    ("dims A=1\n[assoc]\n[assoc]\n", 3),
    ("dims A=1\n[assoc\n", 2),
    ("dims A=1\ndims A=1\n", 2),
    ("dims Q=1\n", 1),
    ("dims A=1\n[bimodule]\n", 2),
])
def test_errors_name_the_line(text, line):
    with pytest.raises(FormatError) as e:
        loads(text)
    assert e.value.line == line
    assert str(e.value).startswith(f"line {line}:")


def test_file_level_errors():
    with pytest.raises(FormatError):
        loads("[assoc]\n")
    with pytest.raises(FormatError):
        loads("dims D=1 A=1\n")
    f = loads("dims A=1\n[assoc]\nmu 0 0 0 1\n")
    with pytest.raises(FormatError):
        f.ravg()
    with pytest.raises(FormatError):
        loads("dims A=1\n[assoc]\n[operator]\nP 0 0 1\n").averaging()


def test_weight_override():
    f = loads("dims A=1\nweight 1\n[assoc]\nmu 0 0 0 1\n[operator]\nP 0 0 1\n")
    assert f.averaging()[2] == 1
    assert f.averaging("2/3")[2] == Fraction(2, 3)
    assert isinstance(f, AlgFile)
