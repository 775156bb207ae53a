"""Sugawara fields, their OPEs with the currents and with each other, and
the mode algebra they generate."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

import sympy

from ..affine import standard_extension
from ..builtins import G10_EPSILON, G10_TILDE, builtin
from ..core import AlgebraSpec, Grade, format_rational, sign
from ..forms import BilinearForm, invariant_forms, invert_form, killing_form
from ..linalg import solve_in_span
from .fields import FieldExpr, LambdaPoly, Level, LevelError, VertexAlgebra

M, N = sympy.symbols("m n", integer=True)


def current_algebra(spec: AlgebraSpec | str, level: Level) -> VertexAlgebra:
    if isinstance(spec, str):
        spec = builtin(spec)
    return VertexAlgebra.from_extension(standard_extension(spec, with_derivations=False), level)


def sugawara(va: VertexAlgebra, form: BilinearForm, level: Level) -> FieldExpr:
    """1/(2 k00 + 1) sum_{a,b} eta_{ab} :X^a X^b:"""
    if 2 * level.k00 + 1 == 0:
        raise LevelError("2 k00 + 1 = 0: Sugawara prefactor undefined")
    if form.is_zero():
        return FieldExpr()
    form = invert_form(form)
    out = FieldExpr()
    for (a, b), v in form.nonzero_entries(lower=True):
        out = out + v * va.normal_product(FieldExpr.generator(a), FieldExpr.generator(b))
    return (1 / (2 * level.k00 + 1)) * out


def sugawara_fields(va: VertexAlgebra) -> dict[str, FieldExpr]:
    """One Sugawara field per invariant form: L (a single form), or L00 and L11."""
    forms = [f for f in invariant_forms(va.spec) if f.degree.parity == 0]
    if len(forms) == 1:
        return {"L": sugawara(va, forms[0], va.level)}
    out = {}
    for f in forms:
        tag = "".join(map(str, f.degree.bits))
        out[f"L{tag}"] = sugawara(va, f, va.level)
    return out


def lambda11(va: VertexAlgebra) -> FieldExpr:
    """λ11 = 2 ω11 / (2 ω00 + 1), with ω11 kept formal when it is."""
    k = 2 * va.level.k00 + 1
    if "w11" in va.central_names:
        return va.central("w11", Fraction(2) / k)
    return FieldExpr.unit(va.level.lambda11)


# -- expressing a field in named fields --------------------------------------


def _split_central(f: FieldExpr) -> dict[tuple, FieldExpr]:
    groups: dict[tuple, dict] = {}
    for w, v in f.terms.items():
        k = 0
        while k < len(w) and w[k][0] < 0:
            k += 1
        groups.setdefault(w[:k], {})[w[k:]] = v
    return {p: FieldExpr(t) for p, t in groups.items()}


def express(va: VertexAlgebra, f: FieldExpr, named: Mapping[str, FieldExpr], max_d: int = 4):
    """Write f as sum c * prefix * ∂^(d) named + sum u * prefix * 1.

    Returns {(prefix, name, d): c} with name None for the unit, or None when
    f is not in that span.
    """
    basis = [(None, 0, FieldExpr.unit())]
    for name, g in named.items():
        cur = g
        for d in range(max_d + 1):
            if d:
                cur = Fraction(1, d) * va.derivative(cur)
            if not cur.is_zero():
                basis.append((name, d, cur))
    words = sorted({w for _, _, b in basis for w in b.terms})
    out = {}
    for prefix, part in _split_central(f).items():
        if any(w not in words for w in part.terms):
            return None
        coeffs = solve_in_span([[b.terms.get(w, 0) for w in words] for _, _, b in basis],
                               [part.terms.get(w, 0) for w in words])
        if coeffs is None:
            return None
        for (name, d, _), c in zip(basis, coeffs):
            if c:
                out[(prefix, name, d)] = Fraction(c)
    return out


def _prefix_symbol(va: VertexAlgebra, prefix) -> sympy.Expr:
    out = sympy.Integer(1)
    for _, i in prefix:
        out *= sympy.Symbol(va.central_names[i])
    return out


def _q(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


def _binom(x, j: int):
    out = sympy.Integer(1)
    for i in range(j):
        out *= (x - i)
    return sympy.expand(out / factorial(j))


# -- mode brackets -------------------------------------------------------------


@dataclass
class ModeRelation:
    """[A_m, B_n] = sum_name loop[name] * name_{m+n} + central * δ_{m+n,0}."""

    loop: dict[str, sympy.Expr]
    central: sympy.Expr

    def format(self) -> str:
        parts = []
        for name in sorted(self.loop):
            parts.append(f"({sympy.factor(self.loop[name])}) {name}_{{m+n}}")
        if self.central != 0:
            parts.append(f"({sympy.factor(self.central)}) δ_{{m+n,0}}")
        return " + ".join(parts) if parts else "0"

    def substitute(self, values: Mapping[str, Fraction]) -> "ModeRelation":
        subs = {sympy.Symbol(k): _q(Fraction(v)) for k, v in values.items()}
        return ModeRelation({k: sympy.expand(v.subs(subs)) for k, v in self.loop.items()},
                            sympy.expand(self.central.subs(subs)))

    def __eq__(self, other):
        if not isinstance(other, ModeRelation):
            return NotImplemented
        keys = set(self.loop) | set(other.loop)
        return all(sympy.expand(self.loop.get(k, 0) - other.loop.get(k, 0)) == 0 for k in keys) \
            and sympy.expand(self.central - other.central) == 0


def mode_bracket(va: VertexAlgebra, a: FieldExpr, b: FieldExpr,
                 named: Mapping[str, FieldExpr], weights: Mapping[str, int] | None = None,
                 wa: int | None = None, wb: int | None = None) -> ModeRelation:
    """[a_m, b_n] symbolically in m, n.

    Uses [a_(p), b_(q)] = sum_j C(p, j) (a_(j) b)_(p+q-j) with the shifted
    indexing a_m = a_(m + wa - 1) for a field of conformal weight wa, and
    (∂^(d) N)_(p) = (-1)^d C(p, d) N_(p-d), 1_(p) = δ_{p,-1}.
    """
    weights = dict(weights or {})
    for name, g in named.items():
        weights.setdefault(name, _weight_of(g))
    wa = _weight_of(a) if wa is None else wa
    wb = _weight_of(b) if wb is None else wb
    p, q = M + wa - 1, N + wb - 1
    loop: dict[str, sympy.Expr] = {}
    central = sympy.Integer(0)
    for j, c in va.lambda_bracket(a, b).coeffs.items():
        parts = express(va, c, named)
        if parts is None:
            raise ValueError(f"a_({j})b is not expressible in the named fields")
        pre = _binom(p, j)
        idx = p + q - j
        for (prefix, name, d), x in parts.items():
            coeff = pre * _q(x) * _prefix_symbol(va, prefix)
            if name is None:
                # 1_(idx) = δ_{idx,-1}; homogeneity makes idx = -1 exactly when m + n = 0
                if sympy.expand(idx - (M + N) + 1) != 0:
                    raise ValueError("unit term at an inhomogeneous mode index")
                central += coeff
                continue
            mode_coeff = (-1) ** d * _binom(idx, d)
            shift = sympy.expand((idx - d) - (weights[name] - 1) - (M + N))
            if shift != 0:
                raise ValueError(f"mode index of {name} is not m+n")
            loop[name] = loop.get(name, 0) + coeff * mode_coeff
    loop = {k: sympy.expand(v) for k, v in loop.items() if sympy.expand(v) != 0}
    central = sympy.expand(central.subs(N, -M))
    return ModeRelation(loop, central)


def _weight_of(f: FieldExpr) -> int:
    ws = {VertexAlgebra.weight(w) for w in f.terms}
    if len(ws) != 1:
        raise ValueError("field is not of homogeneous conformal weight")
    return ws.pop()


# -- X-L table ------------------------------------------------------------------


@dataclass
class XLEntry:
    generator: str
    field: str
    expected: LambdaPoly
    computed: LambdaPoly

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


@dataclass
class XLReport:
    entries: list[XLEntry]

    @property
    def diffs(self) -> list[XLEntry]:
        return [e for e in self.entries if not e.ok]

    @property
    def ok(self) -> bool:
        return not self.diffs


def expected_xl(va: VertexAlgebra, field_name: str, a: int) -> LambdaPoly:
    """Expected [X^a_λ L] from the closed X-L OPE formulas.

    g10: X^a L00 ~ (X^a + λ11 ε(X^a) X~^a)/(z-w)^2 and
         X^a L11 ~ (-1)^{a.(1,1)} (ε(X^a) X~^a + λ11 X^a)/(z-w)^2.
    A single Sugawara field L gives X^a L ~ X^a/(z-w)^2.
    """
    spec = va.spec
    X = FieldExpr.generator(a)
    if field_name == "L":
        return LambdaPoly({1: X})
    name = spec.names[a]
    tilde = FieldExpr.generator(spec.index(G10_TILDE[name]))
    eps = G10_EPSILON.get(name, 1)
    lam = lambda11(va)
    if field_name == "L00":
        return LambdaPoly({1: X + eps * va.normal_product(lam, tilde)})
    s = sign(spec.grade(a), Grade.of(1, 1))
    return LambdaPoly({1: s * (eps * tilde + va.normal_product(lam, X))})


def xl_ope_check(va: VertexAlgebra, fields: Mapping[str, FieldExpr]) -> XLReport:
    entries = []
    for name, L in fields.items():
        for a in range(va.spec.dim):
            got = va.lambda_bracket(FieldExpr.generator(a), L)
            entries.append(XLEntry(va.spec.names[a], name, expected_xl(va, name, a), got))
    return XLReport(entries)


# -- Virasoro structure -----------------------------------------------------


def closed_form_charges(level: Level) -> tuple[Fraction, Fraction]:
    """c00 = (1/3)(2k00/(2k00+1) + λ11²), c11 = (λ11/3)(2k00/(2k00+1) + 1)"""
    x = 2 * level.k00 / (2 * level.k00 + 1)
    lam = level.lambda11
    return Fraction(1, 3) * (x + lam ** 2), lam / 3 * (x + 1)


@dataclass
class VirasoroReport:
    brackets: dict[tuple[str, str], LambdaPoly]
    problems: list[str] = field(default_factory=list)
    charges: dict[tuple[str, str], Fraction] = field(default_factory=dict)
    expected_charges: dict[tuple[str, str], Fraction] = field(default_factory=dict)

    @property
    def structure_ok(self) -> bool:
        return not self.problems

    @property
    def charges_match(self) -> bool:
        return all(self.charges.get(k) == v for k, v in self.expected_charges.items())

    @property
    def ok(self) -> bool:
        return self.structure_ok and self.charges_match

    @property
    def witt(self) -> bool:
        return self.structure_ok and all(c == 0 for c in self.charges.values())

    @property
    def c00(self) -> Fraction | None:
        return self.charges.get(("L00", "L00"), self.charges.get(("L", "L")))

    @property
    def c11(self) -> Fraction | None:
        return self.charges.get(("L00", "L11"))


def _targets(va: VertexAlgebra, fields):
    if "L" in fields:
        return {("L", "L"): fields["L"]}
    lam = lambda11(va)
    L0, L1 = fields["L00"], fields["L11"]
    mixed00 = L0 + va.normal_product(lam, L1)
    return {("L00", "L00"): mixed00,
            ("L11", "L11"): mixed00,
            ("L00", "L11"): L1 + va.normal_product(lam, L0)}


def virasoro_check(va: VertexAlgebra, fields: Mapping[str, FieldExpr]) -> VirasoroReport:
    """Compare [A_λ B] with (∂ + 2λ) T + (c/12) λ^3 for each pair of Sugawara fields.

    The stored λ^3/3! coefficient equals c/2.  Charges are returned with the
    formal central letters evaluated at the level; ``expected_charges`` holds
    the closed formulas c00, c11 where they apply.
    """
    report = VirasoroReport({})
    for (x, y), T in _targets(va, fields).items():
        p = va.lambda_bracket(fields[x], fields[y])
        report.brackets[(x, y)] = p
        checks = {0: va.derivative(T), 1: 2 * T, 2: FieldExpr()}
        for j, want in checks.items():
            if p[j] != want:
                report.problems.append(f"[{x}_λ {y}] λ^{j}/{j}! term: expected "
                                       f"{want.format(va.spec, va.central_names)}, got "
                                       f"{p[j].format(va.spec, va.central_names)}")
        top = p[3]
        if any(any(l[0] >= 0 for l in w) for w in top.terms):
            report.problems.append(f"[{x}_λ {y}] λ^3/3! term is not central: "
                                   f"{top.format(va.spec, va.central_names)}")
        for j in p.coeffs:
            if j > 3:
                report.problems.append(f"[{x}_λ {y}] has a λ^{j} term")
        report.charges[(x, y)] = 2 * va.evaluate(top).unit_part()
    if "L" in fields:
        report.expected_charges[("L", "L")] = Fraction(0) if _sum_gg(va.spec) == 0 else None
    else:
        c00, c11 = closed_form_charges(va.level)
        report.expected_charges[("L00", "L00")] = c00
        report.expected_charges[("L11", "L11")] = c00
        report.expected_charges[("L00", "L11")] = c11
    report.expected_charges = {k: v for k, v in report.expected_charges.items() if v is not None}
    return report


def _sum_gg(spec) -> Fraction:
    g = invert_form(killing_form(spec))
    return sum((g.upper(a, b) * g.lower(a, b) for a in range(spec.dim) for b in range(spec.dim)),
               Fraction(0))


def virasoro_modes(va: VertexAlgebra, fields: Mapping[str, FieldExpr]) -> dict[tuple[str, str], ModeRelation]:
    """[L^x_m, L^y_n] for the Sugawara fields, symbolic in m, n and formal centrals."""
    out = {}
    names = list(fields)
    for i, x in enumerate(names):
        for y in names[i:]:
            out[(x, y)] = mode_bracket(va, fields[x], fields[y], fields)
    return out


def closed_form_mode_relations(va: VertexAlgebra, fields) -> dict[tuple[str, str], ModeRelation]:
    """(m-n)(L_{m+n} + λ11 L~_{m+n}) + (c/12) m(m²-1) δ with the closed-form charges."""
    vir = M * (M ** 2 - 1) / 12
    if "L" in fields:
        return {("L", "L"): ModeRelation({"L": sympy.expand(M - N)}, sympy.Integer(0))}
    k = 2 * va.level.k00 + 1
    lam = 2 * sympy.Symbol("w11") / _q(k)
    x = _q(2 * va.level.k00 / k)
    c00s = sympy.Rational(1, 3) * (x + lam ** 2)
    c11s = lam / 3 * (x + 1)
    return {
        ("L00", "L00"): ModeRelation({"L00": M - N, "L11": sympy.expand((M - N) * lam)},
                                     sympy.expand(c00s * vir)),
        ("L11", "L11"): ModeRelation({"L00": M - N, "L11": sympy.expand((M - N) * lam)},
                                     sympy.expand(c00s * vir)),
        ("L00", "L11"): ModeRelation({"L11": M - N, "L00": sympy.expand((M - N) * lam)},
                                     sympy.expand(c11s * vir)),
    }


def format_charge(x: Fraction | None) -> str:
    return "n/a" if x is None else format_rational(x)
