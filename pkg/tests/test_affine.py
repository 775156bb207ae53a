from fractions import Fraction

import pytest

from gradedlie.affine import (AffineElement, CentralTerm, ConfigurationError, Extension, affine_relations,
                              brute_force_h2, check_leibniz, classify_central_extensions, cocycle_check,
                              derivation_search, format_relation, loop_bracket, standard_extension)
from gradedlie.builtins import abelian, builtin
from gradedlie.core import Grade, all_grades, build_spec, sign
from gradedlie.forms import BilinearForm, check_invariance, invariant_forms, killing_form

from reference_values import G8_CENTRAL, G10_CENTRAL_00, G10_CENTRAL_11, G10_D11

G00, G11 = Grade.of(0, 0), Grade.of(1, 1)


def central_table(spec, term):
    """{(x, y): K} over a <= b, as the coefficient of m delta_{m+n,0}."""
    return {(spec.names[a], spec.names[b]): term.K(a, b)
            for a in range(spec.dim) for b in range(a, spec.dim) if term.K(a, b)}


def normalize_pairs(spec, table):
    """Reorder (x, y) keys to basis order using graded antisymmetry."""
    out = {}
    for (x, y), v in table.items():
        a, b = spec.index(x), spec.index(y)
        if a > b:
            v = sign(spec.grade(a), spec.grade(b)) * v
            x, y = y, x
        out[(x, y)] = v
    return out


def test_loop_bracket_examples():
    g8 = builtin("g8")
    ext = standard_extension(g8)
    Lp, Lm = g8.index("L+"), g8.index("L-")
    got = loop_bracket(ext, AffineElement.mode(Lp, 3), AffineElement.mode(Lm, -3))
    assert got == AffineElement({(g8.index("R"), 0): -1}, {"w00": -6})
    got = loop_bracket(ext, AffineElement.mode(Lp, 2), AffineElement.mode(Lm, 1))
    assert got == AffineElement({(g8.index("R"), 3): -1})
    # central elements are inert
    assert loop_bracket(ext, AffineElement.mode(Lp, 1), AffineElement(central={"w00": 1})).is_zero()
    g10 = builtin("g10")
    ext10 = standard_extension(g10)
    got = loop_bracket(ext10, AffineElement.mode(g10.index("R"), 2), AffineElement.mode(g10.index("Rt"), -2))
    assert got == AffineElement(central={"w11": 24})


def test_g8_central_table():
    g8 = builtin("g8")
    (t,) = standard_extension(g8).centrals
    assert central_table(g8, t) == normalize_pairs(g8, G8_CENTRAL)


def test_g10_central_tables():
    g10 = builtin("g10")
    t00, t11 = standard_extension(g10).centrals
    assert central_table(g10, t00) == normalize_pairs(g10, G10_CENTRAL_00)
    assert central_table(g10, t11) == normalize_pairs(g10, G10_CENTRAL_11)


def test_cocycle_checks():
    g8, g10 = builtin("g8"), builtin("g10")
    assert cocycle_check(g8, CentralTerm.from_form(g8, killing_form(g8))).ok
    eta = invariant_forms(g10)[1]
    assert cocycle_check(g10, CentralTerm.from_form(g10, eta)).ok
    assert not cocycle_check(g10, CentralTerm.unsigned(g10, eta, "w11")).ok


def test_cocycle_matches_invariance():
    # omega with coefficients K passes exactly when (-1)^{a.deg} K^{ab} is an invariant form
    g10 = builtin("g10")
    for form in invariant_forms(g10):
        for term in (CentralTerm.from_form(g10, form), CentralTerm.unsigned(g10, form, "x")):
            folded = tuple(tuple(sign(g10.grade(a), form.degree) * term.K(a, b) for b in range(10))
                           for a in range(10))
            invariant = not check_invariance(g10, BilinearForm(form.degree, folded))
            assert cocycle_check(g10, term).ok == invariant
            assert invariant == (term.signs != (1,) * 10 or form.degree == G00)


def test_classification():
    g8 = builtin("g8")
    res = classify_central_extensions(g8)
    assert res.dimension == 1
    (t,) = res.terms
    assert t.K(g8.index("R"), g8.index("R")) == 4
    assert t.K(g8.index("a+"), g8.index("a-")) == 8
    assert res.absorbed.get("(1,1)")  # the a-at cocycle is a coboundary

    g10 = builtin("g10")
    res = classify_central_extensions(g10)
    assert res.degrees() == [G00, G11]
    t00, t11 = res.terms
    assert t00.K(g10.index("R"), g10.index("R")) == 12
    assert t11.K(g10.index("R"), g10.index("Rt")) == 12
    assert t11.K(g10.index("a-"), g10.index("at+")) == 24
    assert t11.kappa[g10.index("a-")][g10.index("at+")] == -24  # sign (-1)^{a.(1,1)} at work
    for name in ("sl2", "osp12"):
        assert classify_central_extensions(builtin(name)).dimension == 1


def test_classification_needs_grading_element():
    spec = build_spec("t", 1, [("x", [0])], [])
    with pytest.raises(ConfigurationError):
        classify_central_extensions(spec)


@pytest.mark.parametrize("name", ["sl2", "osp12", "g8"])
def test_brute_force_agrees(name):
    spec = builtin(name)
    bf = brute_force_h2(spec, 3)
    assert bf.status == "conclusive"
    assert bf.dimension == classify_central_extensions(spec).dimension


def test_brute_force_g10():
    bf = brute_force_h2(builtin("g10"), 3)
    assert (bf.status, bf.dimension) == ("conclusive", 2)
    assert bf.by_degree == {"(0,0)": 1, "(1,1)": 1}


def test_brute_force_degenerate_and_small_window():
    bf = brute_force_h2(abelian(1), 3)
    assert bf.status == "degenerate" and bf.dimension is None and bf.notes
    assert brute_force_h2(builtin("sl2"), 1).status == "inconclusive"


def test_derivations_g8():
    g8 = builtin("g8")
    (d,) = derivation_search(g8, G00)
    assert d.phi == tuple(tuple(Fraction(int(i == j)) for j in range(8)) for i in range(8))
    for g in all_grades(2)[1:]:
        assert derivation_search(g8, g) == []


def test_derivations_g10():
    g10 = builtin("g10")
    assert len(derivation_search(g10, G00)) == 1
    (d,) = derivation_search(g10, G11)
    images = {g10.names[j]: {g10.names[i]: v for i, v in d.image(j).items()} for j in range(10)}
    assert images == G10_D11
    assert derivation_search(g10, Grade.of(0, 1)) == []
    assert derivation_search(g10, Grade.of(1, 0)) == []
    ext = standard_extension(g10)
    for der in ext.derivations:
        assert check_leibniz(ext, der) == []
    # {d11, a-_m} = -m at-_m, and d11 commutes with both centers
    x = AffineElement(derivation={d.label: 1})
    got = loop_bracket(ext, x, AffineElement.mode(g10.index("a-"), 5))
    assert got == AffineElement({(g10.index("at-"), 5): -5})
    assert loop_bracket(ext, x, AffineElement(central={"w00": 1, "w11": 1})).is_zero()


def test_relations_table():
    g10 = builtin("g10")
    ext = standard_extension(g10, with_derivations=False)
    rels = {(l, r): (loop, cent) for l, r, loop, cent in affine_relations(ext)}
    assert rels[("a+", "a-")] == ({"R": 2}, {"w00": 24})
    assert rels[("R", "Rt")] == ({}, {"w11": 12})
    assert format_relation(g10, "a+", "a-", *rels[("a+", "a-")]) == \
        "{a+_m, a-_n} = 2 R_{m+n} + 24 m w00 delta_{m+n,0}"
    bare = Extension(g10)
    assert all(not cent for _, _, _, cent in affine_relations(bare))
    g8_rels = affine_relations(standard_extension(builtin("g8"), with_derivations=False))
    # every nonzero loop bracket, plus (R,R) and (Rt,Rt) which are purely central
    assert len(g8_rels) == sum(1 for (a, b), _ in builtin("g8").nonzero_pairs() if a <= b) + 2
