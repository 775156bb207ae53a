"""Acceptance gate: ten criteria, exact arithmetic, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed at the end of the session.
"""

import time

import conftest

import test_properties
from gradedlie.affine import (brute_force_h2, check_leibniz, classify_central_extensions, derivation_search,
                              standard_extension)
from gradedlie.builtins import builtin
from gradedlie.conformal import (Level, current_algebra, sugawara_fields, virasoro_check,
                                 virasoro_modes, xl_ope_check)
from gradedlie.conformal.sugawara import M, N, closed_form_charges, closed_form_mode_relations
from gradedlie.core import all_grades, check_axioms
from gradedlie.enveloping import casimir, check_casimir_central
from gradedlie.forms import form_from_M, invariant_forms, invert_form, killing_form
from gradedlie.matrix_rep import commutant

from reference_values import (G8_KILLING, G8_KILLING_INV, G8_LEVELS, G10_D11, G10_ETA, G10_ETA_INV,
                              G10_KILLING, G10_KILLING_INV, G10_LEVELS, G8_C2, G10_C00, G10_C11)
from test_enveloping import expand

G00, G11, G01, G10 = all_grades(2)


def report(n, ok, detail=""):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def nonzero(m):
    return {(a + 1, b + 1): v for a, row in enumerate(m) for b, v in enumerate(row) if v}


def test_criterion_1_axioms():
    t0 = time.perf_counter()
    counts = {name: len(check_axioms(builtin(name))) for name in ("g8", "g10", "osp12", "sl2")}
    elapsed = time.perf_counter() - t0
    ok = all(v == 0 for v in counts.values()) and elapsed < 1
    report(1, ok, f"violations {counts}, {elapsed:.2f}s")


def test_criterion_2_killing_forms():
    g8 = invert_form(killing_form(builtin("g8")))
    g10 = invert_form(killing_form(builtin("g10")))
    checks = {
        "g8": nonzero(g8.matrix) == G8_KILLING,
        "g8 inverse": nonzero(g8.inverse) == G8_KILLING_INV,
        "g10": nonzero(g10.matrix) == G10_KILLING,
        "g10 inverse": nonzero(g10.inverse) == G10_KILLING_INV,
    }
    report(2, all(checks.values()), f"{checks}")


def test_criterion_3_commutant():
    dims = {name: [len(commutant(builtin(name), g)) for g in (G00, G11, G01, G10)] for name in ("g8", "g10")}
    g10 = builtin("g10")
    (Mx,) = commutant(g10, G11)
    I3 = [[int(i == j) for j in range(3)] for i in range(3)]
    sigma3 = [[1, 0], [0, -1]]
    block_ok = (Mx.block(G00, G11) == I3 and Mx.block(G11, G00) == I3
                and Mx.block(G01, G10) == sigma3 and Mx.block(G10, G01) == sigma3
                and all(v == 0 for g in (G00, G11, G01, G10) for r in Mx.block(g, g) for v in r))
    eta = invert_form(form_from_M(g10, Mx))
    eta_ok = nonzero(eta.matrix) == G10_ETA and nonzero(eta.inverse) == G10_ETA_INV
    ok = dims == {"g8": [1, 0, 0, 0], "g10": [1, 1, 0, 0]} and block_ok and eta_ok
    report(3, ok, f"dims {dims}, block matrix {block_ok}, eta table {eta_ok}")


def test_criterion_4_casimirs():
    t0 = time.perf_counter()
    g8, g10 = builtin("g8"), builtin("g10")
    f00, f11 = (invert_form(f) for f in invariant_forms(g10))
    cases = {
        "C2": (g8, casimir(g8, invert_form(killing_form(g8))), G8_C2),
        "C00": (g10, casimir(g10, f00), G10_C00),
        "C11": (g10, casimir(g10, f11), G10_C11),
    }
    central = {k: check_casimir_central(s, c) == {} for k, (s, c, _) in cases.items()}
    table = {k: c == expand(s, t) for k, (s, c, t) in cases.items()}
    elapsed = time.perf_counter() - t0
    ok = all(central.values()) and all(table.values()) and elapsed < 5
    report(4, ok, f"central {central}, coefficients {table}, {elapsed:.2f}s")


def test_criterion_5_central_extensions():
    g8, g10 = builtin("g8"), builtin("g10")
    r8, r10 = classify_central_extensions(g8), classify_central_extensions(g10)
    ix8, ix10 = g8.index, g10.index
    (t8,) = r8.terms
    g8_ok = r8.dimension == 1 and t8.K(ix8("R"), ix8("R")) == 4 and t8.K(ix8("a+"), ix8("a-")) == 8
    t00, t11 = r10.terms
    g10_ok = (r10.dimension == 2 and r10.degrees() == [G00, G11]
              and t00.K(ix10("R"), ix10("R")) == 12 and t00.K(ix10("a+"), ix10("a-")) == 24
              and t11.K(ix10("R"), ix10("Rt")) == 12 and t11.K(ix10("a-"), ix10("at+")) == 24
              and t11.kappa[ix10("a-")][ix10("at+")] == -24)
    t0 = time.perf_counter()
    bf = {name: brute_force_h2(builtin(name), 3) for name in ("g8", "g10")}
    bf_ok = all(b.status == "conclusive" for b in bf.values()) and \
        (bf["g8"].dimension, bf["g10"].dimension) == (r8.dimension, r10.dimension)
    detail = (f"classified dims g8={r8.dimension} g10={r10.dimension}; brute force N=3 "
              f"g8={bf['g8'].dimension} g10={bf['g10'].dimension} ({time.perf_counter() - t0:.1f}s)")
    report(5, g8_ok and g10_ok and bf_ok, detail)


def test_criterion_6_derivations():
    g8, g10 = builtin("g8"), builtin("g10")
    g8_found = {str(g): len(derivation_search(g8, g)) for g in all_grades(2)}
    g10_found = {str(g): len(derivation_search(g10, g)) for g in all_grades(2)}
    (d11,) = derivation_search(g10, G11)
    images = {g10.names[j]: {g10.names[i]: v for i, v in d11.image(j).items()} for j in range(10)}
    ext = standard_extension(g10)
    leibniz = all(check_leibniz(ext, d) == [] for d in ext.derivations)
    ok = (g8_found == {"(0,0)": 1, "(1,1)": 0, "(0,1)": 0, "(1,0)": 0}
          and g10_found == {"(0,0)": 1, "(1,1)": 1, "(0,1)": 0, "(1,0)": 0}
          and images == G10_D11 and leibniz)
    report(6, ok, f"g8 {g8_found}, g10 {g10_found}, d11 table {images == G10_D11}")


def test_criterion_7_witt():
    g = invert_form(killing_form(builtin("g8")))
    contraction = sum(g.matrix[a][b] * g.inverse[a][b] for a in range(8) for b in range(8))
    from_tables = sum(v * G8_KILLING_INV.get(k, 0) for k, v in G8_KILLING.items())
    results = {}
    for k in G8_LEVELS:
        va = current_algebra("g8", Level(k))
        fs = sugawara_fields(va)
        vr = virasoro_check(va, fs)
        (rel,) = virasoro_modes(va, fs).values()
        results[str(k)] = (vr.structure_ok and vr.c00 == 0 and vr.witt
                           and rel.loop == {"L": M - N} and rel.central == 0)
    ok = contraction == 0 == from_tables and all(results.values())
    report(7, ok, f"sum g_ab g^ab = {contraction}; c = 0 and Witt modes at k = {results}")


def test_criterion_8_graded_virasoro():
    t0 = time.perf_counter()
    structure, charges, modes = {}, {}, {}
    for k00, k11 in G10_LEVELS:
        level = Level(k00, k11)
        va = current_algebra("g10", level)
        fs = sugawara_fields(va)
        vr = virasoro_check(va, fs)
        key = f"({k00},{k11})"
        structure[key] = vr.structure_ok
        c00, c11 = closed_form_charges(level)
        charges[key] = ((vr.c00, vr.c11), (c00, c11))
        got, want = virasoro_modes(va, fs), closed_form_mode_relations(va, fs)
        values = level.values()
        modes[key] = {
            "loop": all(got[p].loop == want[p].loop for p in want),
            "central": all(got[p].substitute(values) == want[p].substitute(values) for p in want),
        }
    elapsed = time.perf_counter() - t0
    fmt = "; ".join(f"{key} c00 {_f(g[0])} vs formula {_f(w[0])}, c11 {_f(g[1])} vs formula {_f(w[1])}"
                    for key, (g, w) in charges.items())
    ok = (all(structure.values()) and all(g == w for g, w in charges.values())
          and all(all(m.values()) for m in modes.values()) and elapsed < 30)
    detail = (f"bracket structure ok {all(structure.values())}; mode loop parts ok "
              f"{all(m['loop'] for m in modes.values())}; mode central terms ok "
              f"{all(m['central'] for m in modes.values())}; {fmt}; {elapsed:.1f}s")
    report(8, ok, detail)


def _f(x):
    return "None" if x is None else str(x)


def test_criterion_9_xl_table():
    diffs = {}
    for k00, k11 in G10_LEVELS:
        va = current_algebra("g10", Level(k00, k11))
        rep = xl_ope_check(va, sugawara_fields(va))
        diffs[f"({k00},{k11})"] = [(e.generator, e.field) for e in rep.diffs]
        if len(rep.entries) != 20:
            diffs[f"({k00},{k11})"].append(("entries", len(rep.entries)))
    for k in G8_LEVELS:
        va = current_algebra("g8", Level(k))
        diffs[str(k)] = [(e.generator, e.field) for e in xl_ope_check(va, sugawara_fields(va)).diffs]
    report(9, all(not d for d in diffs.values()), f"diff entries per level {[len(d) for d in diffs.values()]}")


def test_criterion_10_property_suites():
    suites = [test_properties.test_graded_skew_symmetry, test_properties.test_conformal_jacobi,
              test_properties.test_lambda_skew_symmetry, test_properties.test_sesquilinearity,
              test_properties.test_supertrace_cyclicity]
    failed = []
    for fn in suites:
        try:
            fn()
        except AssertionError:
            failed.append(fn.__name__)
    names = ", ".join(fn.__name__.removeprefix("test_") for fn in suites)
    report(10, not failed, f"ran {names}" + (f"; failed {failed}" if failed else ""))
