"""Command-line front end.

Exit status: 0 when every executed check passes, 1 on a check failure,
2 on a usage error (bad flags, unreadable or malformed algebra file).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import builtins
from .affine import (
    ConfigurationError,
    brute_force_h2,
    check_leibniz,
    classify_central_extensions,
    derivation_search,
    format_relation,
    affine_relations,
    standard_extension,
)
from .core import AlgebraError, Grade, all_grades, check_axioms, format_rational, format_terms, parse_spec
from .enveloping import casimir, check_casimir_central, grouped_presentation
from .forms import DegenerateFormError, check_form_properties, format_form, invariant_forms, invert_form
from .matrix_rep import check_ad_homomorphism, commutant
from .report import Report, render

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _verbose() -> bool:
    return os.environ.get("GRADEDLIE_VERBOSE", "") not in ("", "0")


def load_algebra(args):
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                return parse_spec(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
        except AlgebraError as exc:
            raise UsageError(f"{args.file}: {exc}") from None
    try:
        return builtins.builtin(args.algebra)
    except AlgebraError as exc:
        raise UsageError(str(exc)) from None


def parse_degree(text: str, rank: int) -> Grade:
    bits = text.replace("(", "").replace(")", "").replace(",", "").strip()
    if len(bits) != rank or any(b not in "01" for b in bits):
        raise UsageError(f"bad degree {text!r}; expected {rank} binary digits such as 11")
    return Grade.of(*map(int, bits))


def _degrees(args, spec):
    if getattr(args, "degree", None):
        return [parse_degree(args.degree, spec.rank)]
    return all_grades(spec.rank)


def _tag(g: Grade) -> str:
    return "".join(map(str, g.bits))


# -- subcommands -------------------------------------------------------------


def cmd_validate(spec, args) -> Report:
    rep = Report(f"validate {spec.name}")
    viol = check_axioms(spec)
    for kind in ("grading", "skew", "jacobi"):
        hits = [v for v in viol if v.kind == kind]
        label = {"grading": "Grading", "skew": "Skew-symmetry", "jacobi": "Jacobi"}[kind]
        rep.add("summary", f"{label}: {len(hits)} violations", check=kind, violations=len(hits))
        for v in hits:
            rep.fail("violation", f"  {kind} ({','.join(v.generators)}): residual {_fmt_map(v.residual)}",
                     check=kind, generators=list(v.generators), residual=v.residual)
    bad = check_ad_homomorphism(spec)
    rep.add("summary", f"ad homomorphism: {len(bad)} failing pairs", check="ad", violations=len(bad))
    for a, b in bad:
        rep.fail("violation", f"  ad [{a},{b}] != [ad {a}, ad {b}]", check="ad", generators=[a, b])
    return rep


def _fmt_map(m) -> str:
    return ", ".join(f"{k}: {format_rational(v)}" for k, v in m.items()) or "0"


def cmd_forms(spec, args) -> Report:
    rep = Report(f"forms {spec.name}")
    for form in invariant_forms(spec):
        symbol = "g" if form.label == "g" else "eta"
        try:
            form = invert_form(form)
            degenerate = False
        except DegenerateFormError:
            degenerate = True
        rep.add("form", f"{form.label}: degree {form.degree}" + (" (degenerate)" if degenerate else ""),
                label=form.label, degree=str(form.degree), degenerate=degenerate)
        for line in format_form(spec, form, symbol):
            lhs, rhs = line.split(" = ")
            rep.add("entry", f"  {line}", label=form.label, component=lhs, value=rhs)
        problems = check_form_properties(spec, form)
        rep.add("check", f"  invariance and symmetry: {'OK' if not problems else 'FAILED'}",
                label=form.label, ok=not problems)
        for p in problems:
            rep.fail("problem", f"  {p}", label=form.label, problem=p)
    return rep


def cmd_commutant(spec, args) -> Report:
    rep = Report(f"commutant {spec.name}")
    for deg in _degrees(args, spec):
        basis = commutant(spec, deg)
        rep.add("dimension", f"degree {deg}: dimension {len(basis)}", degree=str(deg), dimension=len(basis))
        for i, M in enumerate(basis):
            rows = [[format_rational(x) for x in row] for row in M.entries]
            text = "\n".join("  " + line for line in str(M).splitlines())
            rep.add("matrix", text, degree=str(deg), index=i, entries=rows)
    return rep


def cmd_casimir(spec, args) -> Report:
    rep = Report(f"casimir {spec.name}")
    for form in invariant_forms(spec):
        name = f"C{_tag(form.degree)}"
        try:
            form = invert_form(form)
        except DegenerateFormError:
            rep.add("casimir", f"{name}: form {form.label} is degenerate, no Casimir", name=name, degenerate=True)
            continue
        c = casimir(spec, form)
        bad = check_casimir_central(spec, c)
        text = grouped_presentation(spec, form)
        rep.add("casimir", f"{name} = {text}", name=name, degree=str(form.degree), presentation=text,
                pbw=str(c))
        if bad:
            for g, resid in bad.items():
                rep.fail("noncentral", f"  [{g}, {name}] = {resid}", name=name, generator=g, residual=str(resid))
        else:
            rep.add("central", f"  {name} central: yes", name=name, central=True)
    return rep


def cmd_central_ext(spec, args) -> Report:
    rep = Report(f"central-ext {spec.name}")
    try:
        res = classify_central_extensions(spec)
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from None
    degs = ",".join(str(g) for g in res.degrees())
    rep.add("dimension", f"H² dimension: {res.dimension}; degrees {degs}",
            dimension=res.dimension, degrees=[str(g) for g in res.degrees()])
    for t in res.terms:
        rep.add("term", f"{t.label} (degree {t.degree}):", label=t.label, degree=str(t.degree))
        for a in range(spec.dim):
            for b in range(spec.dim):
                if t.K(a, b):
                    rep.add("omega", f"  omega({spec.names[a]}_m, {spec.names[b]}_n) = "
                                     f"{format_rational(t.K(a, b))} m delta_{{m+n,0}} {t.label}",
                            label=t.label, left=spec.names[a], right=spec.names[b], coeff=t.K(a, b))
    for deg, n in res.absorbed.items():
        if n:
            rep.add("absorbed", f"constant cocycles of degree {deg} absorbed as coboundaries: {n}",
                    degree=deg, count=n)
    if args.window is not None:
        bf = brute_force_h2(spec, args.window)
        dim = "n/a" if bf.dimension is None else bf.dimension
        rep.add("brute-force", f"brute force (window {bf.window}): dimension {dim}, status {bf.status}",
                window=bf.window, dimension=bf.dimension, status=bf.status, by_degree=bf.by_degree)
        for note in bf.notes:
            rep.add("note", f"  note: {note}", note=note)
        if bf.status == "conclusive" and bf.dimension != res.dimension:
            rep.fail("mismatch", f"  brute force disagrees with the classification ({bf.dimension} vs {res.dimension})",
                     expected=res.dimension, got=bf.dimension)
    return rep


def cmd_derivations(spec, args) -> Report:
    rep = Report(f"derivations {spec.name}")
    ext = standard_extension(spec, with_derivations=False)
    for deg in _degrees(args, spec):
        found = derivation_search(spec, deg)
        rep.add("dimension", f"degree {deg}: {len(found)} derivations", degree=str(deg), count=len(found))
        for d in found:
            images = {}
            for j in range(spec.dim):
                img = d.image(j)
                if img:
                    images[spec.names[j]] = {spec.names[i]: v for i, v in sorted(img.items())}
            rep.add("derivation", f"  {d.label}:", label=d.label, degree=str(deg),
                    phi=[[format_rational(x) for x in row] for row in d.phi])
            for src, img in images.items():
                body = format_terms((v, n) for n, v in img.items())
                rep.add("image", f"    [{d.label}, {src}_n] = n ({body})_n", label=d.label, source=src, image=img)
            ext_d = type(ext)(spec, ext.centrals, (d,))
            bad = check_leibniz(ext_d, d)
            if bad:
                rep.fail("leibniz", f"    Leibniz rule fails on {len(bad)} samples", label=d.label, failures=len(bad))
    return rep


def cmd_affine_table(spec, args) -> Report:
    rep = Report(f"affine-table {spec.name}")
    ext = standard_extension(spec, with_derivations=False)
    for left, right, loop, cent in affine_relations(ext):
        rep.add("relation", format_relation(spec, left, right, loop, cent),
                left=left, right=right, loop=loop, central=cent)
    return rep


def cmd_sugawara(spec, args) -> Report:
    from .conformal import Level, LevelError, current_algebra, sugawara_fields, virasoro_check, xl_ope_check
    from .conformal.sugawara import closed_form_mode_relations, virasoro_modes

    try:
        level = Level.parse(args.level)
    except LevelError as exc:
        raise UsageError(str(exc)) from None
    va = current_algebra(spec, level)
    if "w11" in va.central_names and level.k11 is None:
        raise UsageError("this algebra has a (1,1) central element: pass --level k00,k11")
    try:
        fields = sugawara_fields(va)
    except DegenerateFormError as exc:
        raise UsageError(str(exc)) from None
    rep = Report(f"sugawara {spec.name} at level {args.level}")
    cn = va.central_names
    if args.emit == "ope":
        known = "L" in fields or spec.name == "g10"
        for name, L in fields.items():
            rep.add("field", f"{name} = {L.format(spec, cn)}", field=name, expr=L.format(spec, cn))
        if known:
            for e in xl_ope_check(va, fields).entries:
                text = f"[{e.generator}_λ {e.field}] = {e.computed.format(spec, central_names=cn)}"
                if e.ok:
                    rep.add("xl", text, generator=e.generator, field=e.field,
                            value=e.computed.format(spec, central_names=cn))
                else:
                    rep.fail("xl", text + f"   expected {e.expected.format(spec, central_names=cn)}",
                             generator=e.generator, field=e.field,
                             value=e.computed.format(spec, central_names=cn),
                             expected=e.expected.format(spec, central_names=cn))
        vr = virasoro_check(va, fields)
        for (x, y), p in vr.brackets.items():
            rep.add("ll", f"[{x}_λ {y}] = {p.format(spec, central_names=cn)}", left=x, right=y,
                    value=p.format(spec, central_names=cn))
        for prob in vr.problems:
            rep.fail("structure", f"  {prob}", problem=prob)
    elif args.emit == "modes":
        got = virasoro_modes(va, fields)
        want = closed_form_mode_relations(va, fields)
        for (x, y), rel in got.items():
            rep.add("mode", f"[{x}_m, {y}_n] = {rel.format()}", left=x, right=y, value=rel.format())
            exp = want.get((x, y))
            if exp is not None and not rel == exp:
                rep.fail("mode-mismatch", f"  closed form: {exp.format()}", left=x, right=y,
                         expected=exp.format())
    else:
        vr = virasoro_check(va, fields)
        for prob in vr.problems:
            rep.fail("structure", prob, problem=prob)
        if "L" in fields:
            c = vr.charges[("L", "L")]
            rep.add("charge", f"central charge c = {format_rational(c)}", name="c", value=c)
            if vr.witt:
                rep.add("verdict", "Witt algebra (central term vanishes)", verdict="Witt")
            else:
                rep.add("verdict", "Virasoro algebra", verdict="Virasoro")
        else:
            rep.add("lambda11", f"lambda11 = {format_rational(level.lambda11)}", value=level.lambda11)
            for key, name in ((("L00", "L00"), "c00"), (("L00", "L11"), "c11"), (("L11", "L11"), "c00 from [L11_λ L11]")):
                got, exp = vr.charges[key], vr.expected_charges.get(key)
                text = f"{name} = {format_rational(got)}"
                if exp is None or got == exp:
                    rep.add("charge", text, name=name, value=got)
                else:
                    rep.fail("charge", f"{text}   closed formula gives {format_rational(exp)}",
                             name=name, value=got, expected=exp)
    return rep


COMMANDS = {
    "validate": cmd_validate,
    "forms": cmd_forms,
    "commutant": cmd_commutant,
    "casimir": cmd_casimir,
    "central-ext": cmd_central_ext,
    "derivations": cmd_derivations,
    "affine-table": cmd_affine_table,
    "sugawara": cmd_sugawara,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gradedlie", description="Exact computations with Z2^n-graded Lie superalgebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--algebra", help="builtin algebra: " + ", ".join(builtins.NAMES))
        src.add_argument("--file", help="algebra definition file (JSON)")
        p.add_argument("--format", choices=("human", "structured"), default="human")
        if name in ("commutant", "derivations"):
            p.add_argument("--degree", help="restrict to one degree, e.g. 11")
        if name == "central-ext":
            p.add_argument("--window", type=int, help="also run the brute-force oracle on |m|,|n| <= N")
        if name == "sugawara":
            p.add_argument("--level", required=True, help="k00 or k00,k11 as rational literals")
            p.add_argument("--emit", choices=("ope", "modes", "charges"), default="charges")
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        spec = load_algebra(args)
        report = COMMANDS[args.command](spec, args)
    except UsageError as exc:
        print(f"gradedlie: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(render(report, args.format))
    if _verbose():
        print(f"{len(report.records)} records, {report.failures} failures", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
