from fractions import Fraction

import pytest

from pbwhit.algebra import (
    AlgebraError,
    AlgebraFileError,
    builtin_algebra,
    check_jacobi,
    grading_violations,
    load_algebra,
    parse_algebra_text,
    parse_rational,
    rational_str,
)


def test_schrodinger_bracket_table():
    spec = builtin_algebra("schrodinger")
    assert spec.bracket("h", "e") == {"e": Fraction(2)}
    assert spec.bracket("h", "f") == {"f": Fraction(-2)}
    assert spec.bracket("e", "f") == {"h": Fraction(1)}
    assert spec.bracket("h", "p") == {"p": Fraction(1)}
    assert spec.bracket("h", "q") == {"q": Fraction(-1)}
    assert spec.bracket("p", "q") == {"z": Fraction(1)}
    assert spec.bracket("e", "q") == {"p": Fraction(1)}
    assert spec.bracket("p", "f") == {"q": Fraction(-1)}
    assert spec.bracket("f", "q") == {}
    assert spec.bracket("e", "p") == {}
    for g in "efhpq":
        assert spec.bracket("z", g) == {}


def test_bracket_antisymmetry():
    spec = builtin_algebra("schrodinger")
    names = [g.name for g in spec.generators]
    for x in names:
        for y in names:
            forward = spec.bracket(x, y)
            backward = spec.bracket(y, x)
            assert forward == {k: -c for k, c in backward.items()}
            if x == y:
                assert forward == {}


def test_gradings():
    spec = builtin_algebra("schrodinger")
    assert [(g.name, g.grading) for g in spec.generators] == [
        ("f", -2), ("q", -1), ("h", 0), ("z", 0), ("p", 1), ("e", 2),
    ]
    assert grading_violations(spec) == []


def test_jacobi_all_builtins():
    for name in ("schrodinger", "sl2", "heisenberg", "s1"):
        report = check_jacobi(builtin_algebra(name))
        assert report.passed, report.failures
    # 6 generators -> C(6,3) triples
    assert check_jacobi(builtin_algebra("schrodinger")).triples_checked == 20


def test_central_detection():
    spec = builtin_algebra("schrodinger")
    assert [spec.generators[i].name for i in sorted(spec.central)] == ["z"]
    assert builtin_algebra("sl2").central == frozenset()


def test_subalgebra_closure():
    spec = builtin_algebra("schrodinger")
    spec.subalgebra_restrict(["f", "h", "e"])
    spec.subalgebra_restrict(["q", "z", "p"])
    spec.subalgebra_restrict(["q", "h", "z", "p", "e"])
    with pytest.raises(AlgebraError, match="not closed"):
        spec.subalgebra_restrict(["q", "h", "p"])  # [q,p] = -z escapes


def test_s1_matches_restriction():
    s1 = builtin_algebra("s1")
    schro = builtin_algebra("schrodinger")
    for x in ("q", "h", "z", "p", "e"):
        for y in ("q", "h", "z", "p", "e"):
            assert s1.bracket(x, y) == schro.bracket(x, y)


SL2_FILE = """\
# sl2 with the global generator order
gen f -2
gen h 0
gen e 2
bracket f h = 2/1*f
bracket f e = -1/1*h
bracket h e = 2/1*e
"""


def test_parse_algebra_text_round_trip():
    spec = parse_algebra_text(SL2_FILE, name="sl2")
    assert spec == builtin_algebra("sl2")


def test_parse_algebra_errors():
    with pytest.raises(AlgebraFileError) as err:
        parse_algebra_text("gen a 0\ngen a 1\n")
    assert err.value.line == 2
    with pytest.raises(AlgebraFileError):
        parse_algebra_text("gen a 0\nbracket a b = 1*a\n")
    with pytest.raises(AlgebraFileError):
        parse_algebra_text("gen a 0\ngen b 0\nbracket a b = 1*a +\n")
    with pytest.raises(AlgebraFileError, match="[Jj]acobi"):
        # [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = [b,-a] + [c,c] = c != 0
        parse_algebra_text(
            "gen a 0\ngen b 0\ngen c 0\n"
            "bracket a b = 1*c\nbracket a c = 1*a\n"
        )
    with pytest.raises(AlgebraFileError, match="grading"):
        parse_algebra_text(
            "gen a 1\ngen b 1\ngen c 0\nbracket a b = 1*c\n"
        )


def test_load_algebra_from_file(tmp_path):
    path = tmp_path / "sl2.alg"
    path.write_text(SL2_FILE)
    assert load_algebra(str(path)) == builtin_algebra("sl2")
    with pytest.raises(AlgebraError):
        load_algebra("no_such_builtin_or_file")


def test_parse_rational_strict():
    assert parse_rational("3") == Fraction(3)
    assert parse_rational("-4/7") == Fraction(-4, 7)
    assert parse_rational("0") == Fraction(0)
    assert parse_rational(" 2 ") == Fraction(2)  # surrounding space tolerated
    for bad in ("0.5", "1e3", "1 / 2", "2/0", "a", "", "1/2/3", "+"):
        with pytest.raises((AlgebraError, ValueError)):
            parse_rational(bad)


def test_rational_str_canonical():
    assert rational_str(Fraction(3)) == "3/1"
    assert rational_str(Fraction(-1, 2)) == "-1/2"
    assert rational_str(Fraction(0)) == "0/1"
