import json
from fractions import Fraction

import pytest

from gradedlie.builtins import G10_EPSILON, G10_TILDE, abelian, builtin, load_data_file
from gradedlie.core import (AlgebraElement, AlgebraError, Grade, SpecSemanticError, SpecSyntaxError,
                            all_grades, bracket, build_spec, check_axioms, format_rational,
                            format_terms, parse_spec, serialize_spec, sign)


def test_grade_arithmetic():
    a, b = Grade.of(0, 1), Grade.of(1, 1)
    assert a + b == Grade.of(1, 0)
    assert a + a == Grade.zero(2)
    assert a.dot(b) == 1 and sign(a, b) == -1
    assert Grade.of(1, 0).dot(Grade.of(0, 1)) == 0
    assert [str(g) for g in all_grades(2)] == ["(0,0)", "(1,1)", "(0,1)", "(1,0)"]
    with pytest.raises(AlgebraError):
        Grade.of(2, 0)


def test_builtin_shapes():
    g8, g10 = builtin("g8"), builtin("g10")
    assert g8.names == ["L+", "R", "L-", "Rt", "a+", "a-", "at+", "at-"]
    assert g10.names == ["L+", "R", "L-", "Lt+", "Rt", "Lt-", "a+", "a-", "at+", "at-"]
    assert [str(g) for _, g in g8.generators] == ["(0,0)"] * 3 + ["(1,1)"] + ["(0,1)"] * 2 + ["(1,0)"] * 2
    assert [str(g) for _, g in g10.generators] == ["(0,0)"] * 3 + ["(1,1)"] * 3 + ["(0,1)"] * 2 + ["(1,0)"] * 2
    sl2 = builtin("sl2")
    assert sl2.dim == 3 and all(g == Grade.zero(2) for _, g in sl2.generators)
    with pytest.raises(AlgebraError):
        builtin("e8")


def test_bracket_examples():
    g8, g10, sl2 = builtin("g8"), builtin("g10"), builtin("sl2")
    assert bracket(g8, g8.element("R"), g8.element("L+")) == 2 * g8.element("L+")
    assert bracket(g8, g8.element("R"), AlgebraElement.zero(g8)) == 0
    assert bracket(g10, g10.element("a+"), g10.element("at+")) == -4 * g10.element("Lt+")
    assert bracket(sl2, sl2.element("L+"), sl2.element("L-")) == -1 * sl2.element("R")
    assert bracket(sl2, sl2.element("R"), sl2.element("L-")) == -2 * sl2.element("L-")
    # anticommutator of two (0,1) elements
    assert bracket(g8, g8.element("a+"), g8.element("a-")) == 2 * g8.element("R")
    assert bracket(g8, g8.element("a-"), g8.element("a+")) == 2 * g8.element("R")


def test_malformed_element():
    g8 = builtin("g8")
    with pytest.raises(AlgebraError):
        AlgebraElement(g8, {8: 1})


def test_element_grade_and_zero_coefficients():
    g8 = builtin("g8")
    x = AlgebraElement(g8, {0: 1, 2: 0})
    assert x.coeffs == {0: 1}
    assert x.grade == Grade.zero(2)
    assert (g8.element("R") + g8.element("Rt")).grade is None


@pytest.mark.parametrize("name", ["g8", "g10", "osp12", "sl2"])
def test_axioms_hold(name):
    assert check_axioms(builtin(name)) == []


def test_mutated_g8_breaks_jacobi():
    bad = builtin("g8").with_bracket("R", "L+", {"L+": 3})
    viol = check_axioms(bad)
    assert viol and all(v.kind == "jacobi" for v in viol)
    assert any(set(v.generators) >= {"R", "L+"} for v in viol)


def test_round_trip():
    for name in ("g8", "g10", "osp12", "sl2"):
        spec = builtin(name)
        assert parse_spec(serialize_spec(spec)) == spec


def test_shipped_fixture_matches_builtin():
    assert load_data_file("g10") == builtin("g10")
    assert load_data_file("g8") == builtin("g8")


def _doc(brackets, gens=None):
    return json.dumps({
        "name": "t", "rank": 2,
        "generators": gens or [{"name": "x", "grade": [0, 0]}, {"name": "y", "grade": [0, 1]}],
        "brackets": brackets,
    })


def test_parse_grading_violation_is_semantic():
    text = _doc([{"left": "x", "right": "y", "result": [{"gen": "x", "coeff": "1"}]}])
    with pytest.raises(SpecSemanticError):
        parse_spec(text)


def test_parse_syntax_error_has_position():
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec('{"name": "t",\n  "rank": }')
    assert info.value.line == 2 and info.value.column > 0


def test_parse_rejects_decimals():
    text = _doc([{"left": "x", "right": "y", "result": [{"gen": "y", "coeff": "0.5"}]}])
    with pytest.raises(SpecSemanticError):
        parse_spec(text)


def test_parse_sorts_generators_and_records_permutation():
    text = json.dumps({
        "name": "t", "rank": 2,
        "generators": [{"name": "f", "grade": [0, 1]}, {"name": "h", "grade": [0, 0]}],
        "brackets": [{"left": "f", "right": "h", "result": [{"gen": "f", "coeff": "-1/2"}]}],
    })
    spec = parse_spec(text)
    assert spec.names == ["h", "f"]
    assert spec.permutation == (1, 0)
    # [f, h] = -1/2 f is stored as [h, f] = 1/2 f
    assert spec.coeff(0, 1, 1) == Fraction(1, 2)
    assert spec.coeff(1, 0, 1) == Fraction(-1, 2)


def test_inconsistent_duplicate_rejected():
    with pytest.raises(SpecSemanticError):
        build_spec("t", 1, [("x", [0]), ("y", [0])],
                   [("x", "y", {"y": 1}), ("y", "x", {"y": 1})])


def test_self_bracket_of_even_generator_is_skew_violation():
    spec = build_spec("t", 1, [("x", [0])], [("x", "x", {"x": 1})])
    kinds = [v.kind for v in check_axioms(spec)]
    assert kinds[0] == "skew"


def test_abelian_is_valid():
    assert check_axioms(abelian(3)) == []


def test_tilde_table_is_an_involution():
    for k, v in G10_TILDE.items():
        assert G10_TILDE[v] == k
        assert builtin("g10").grade(builtin("g10").index(v)) == \
            builtin("g10").grade(builtin("g10").index(k)) + Grade.of(1, 1)
    assert {k for k, v in G10_EPSILON.items() if v == -1} == {"a-", "at-"}


def test_formatting():
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(4) == "4"
    assert format_terms([(1, "a"), (Fraction(-2, 3), "b"), (0, "c")]) == "a - 2/3 b"
    assert format_terms([(-1, "x"), (5, "")]) == "-x + 5"
    assert format_terms([]) == "0"
    g8 = builtin("g8")
    assert str(bracket(g8, g8.element("L+"), g8.element("L-"))) == "-R"
