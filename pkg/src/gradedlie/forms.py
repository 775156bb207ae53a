"""Invariant bilinear forms built from commutant matrices, and their Casimirs."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product

from .core import AlgebraSpec, Grade, all_grades, format_rational, sign
from .linalg import SingularMatrixError, inverse, matmul
from .matrix_rep import GradedMatrix, adjoint_rep, commutant, supertrace


class FormConsistencyError(RuntimeError):
    """A computed form failed one of its own defining identities."""


class DegenerateFormError(ValueError):
    pass


@dataclass(frozen=True)
class BilinearForm:
    """eta^{ab} with degree; ``inverse`` holds eta_{ab} once computed."""

    degree: Grade
    matrix: tuple[tuple[Fraction, ...], ...]
    inverse: tuple[tuple[Fraction, ...], ...] | None = None
    label: str = "eta"

    @property
    def size(self):
        return len(self.matrix)

    def upper(self, a, b) -> Fraction:
        return self.matrix[a][b]

    def lower(self, a, b) -> Fraction:
        if self.inverse is None:
            raise DegenerateFormError("inverse not computed; call invert_form first")
        return self.inverse[a][b]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def nonzero_entries(self, lower=False):
        m = self.inverse if lower else self.matrix
        return [((a, b), m[a][b]) for a in range(self.size) for b in range(self.size) if m[a][b]]

    def scaled(self, k) -> "BilinearForm":
        k = Fraction(k)
        inv = None if self.inverse is None else tuple(tuple(x / k for x in r) for r in self.inverse)
        return replace(self, matrix=tuple(tuple(k * x for x in r) for r in self.matrix), inverse=inv)


def _as_tuple(m):
    return tuple(tuple(Fraction(x) for x in r) for r in m)


def form_from_M(spec: AlgebraSpec, M: GradedMatrix, label: str = "eta") -> BilinearForm:
    """eta^{ab} = Str(ad X^a M ad X^b); invariance is verified before returning."""
    ads = [adjoint_rep(spec, a) for a in range(spec.dim)]
    r = spec.dim
    mat = [[Fraction(0)] * r for _ in range(r)]
    for a in range(r):
        left = ads[a] @ M
        for b in range(r):
            mat[a][b] = supertrace(left @ ads[b])
    form = BilinearForm(M.degree, _as_tuple(mat), label=label)
    problems = check_invariance(spec, form)
    if problems:
        raise FormConsistencyError(f"form from M is not invariant: {problems[:3]}")
    return form


def killing_form(spec: AlgebraSpec) -> BilinearForm:
    """g^{ab} = Str(ad X^a ad X^b), cross-checked against the structure-constant sum."""
    form = form_from_M(spec, GradedMatrix.identity(tuple(g for _, g in spec.generators)), label="g")
    r = spec.dim
    for a in range(r):
        for b in range(r):
            if killing_double_sum(spec, a, b) != form.matrix[a][b]:
                raise FormConsistencyError(f"Killing form disagrees at ({a},{b})")
    return form


def killing_double_sum(spec: AlgebraSpec, a: int, b: int) -> Fraction:
    """sum_{i,j} (-1)^{|i|} f^{aj}_i f^{bi}_j

    The block sign is the parity of the row grade i, which is what the
    supertrace of ad X^a ad X^b produces.
    """
    total = Fraction(0)
    for j in range(spec.dim):
        for i, v in spec.f(a, j).items():
            w = spec.coeff(b, i, j)
            if w:
                total += (-1 if spec.grade(i).parity else 1) * v * w
    return total


def invert_form(form: BilinearForm) -> BilinearForm:
    if form.inverse is not None:
        return form
    try:
        inv = inverse(form.matrix)
    except SingularMatrixError:
        raise DegenerateFormError(f"form {form.label} of degree {form.degree} is degenerate") from None
    return replace(form, inverse=_as_tuple(inv))


def check_invariance(spec: AlgebraSpec, form: BilinearForm) -> list[tuple[str, str, str]]:
    """Triples violating sum_k f^{ab}_k eta^{kc} = (-1)^{m.b} sum_k eta^{ak} f^{bc}_k."""
    r = spec.dim
    eta = form.matrix
    bad = []
    for a, b, c in product(range(r), repeat=3):
        lhs = sum((v * eta[k][c] for k, v in spec.f(a, b).items()), Fraction(0))
        rhs = sum((eta[a][k] * v for k, v in spec.f(b, c).items()), Fraction(0))
        if lhs != sign(form.degree, spec.grade(b)) * rhs:
            bad.append((spec.names[a], spec.names[b], spec.names[c]))
    return bad


def check_form_properties(spec: AlgebraSpec, form: BilinearForm) -> list[str]:
    """Grade selection, graded (anti)symmetry, invariance and inverse identity."""
    problems = []
    r = spec.dim
    m = form.degree
    for a in range(r):
        for b in range(r):
            x = form.matrix[a][b]
            if x and spec.grade(a) + spec.grade(b) != m:
                problems.append(f"grade selection fails at ({a},{b})")
            s = sign(spec.grade(a), spec.grade(b)) * sign(m, m)
            if form.matrix[b][a] != s * x:
                problems.append(f"graded symmetry fails at ({a},{b})")
    problems += [f"invariance fails at {t}" for t in check_invariance(spec, form)]
    if form.inverse is not None:
        prod = matmul(form.matrix, form.inverse)
        if any(prod[i][j] != (i == j) for i in range(r) for j in range(r)):
            problems.append("eta * eta^{-1} != identity")
    return problems


def invariant_forms(spec: AlgebraSpec) -> list[BilinearForm]:
    """One form per commutant basis matrix, over all degrees.

    The degree-zero solution containing the identity is replaced by the
    Killing form itself; the other degrees keep the normalized commutant
    basis, then get rescaled by :func:`table_normalized` when applicable.
    """
    forms = []
    grades = tuple(g for _, g in spec.generators)
    for deg in all_grades(spec.rank):
        for M in commutant(spec, deg):
            if deg == Grade.zero(spec.rank) and M.entries == GradedMatrix.identity(grades).entries:
                forms.append(killing_form(spec))
            else:
                forms.append(table_normalized(spec, form_from_M(spec, M, label=f"eta{_tag(deg)}")))
    return forms


def _tag(g: Grade) -> str:
    return "".join(map(str, g.bits))


def table_normalized(spec: AlgebraSpec, form: BilinearForm) -> BilinearForm:
    """Rescale a nonzero-degree form so that its (L+, Lt-) entry is -6.

    This is the conventional g10 normalization; for algebras without those
    generators the form is returned unchanged.
    """
    try:
        a, b = spec.index("L+"), spec.index("Lt-")
    except Exception:
        return form
    x = form.matrix[a][b]
    if not x:
        return form
    return form.scaled(Fraction(-6) / x)


def format_form(spec: AlgebraSpec, form: BilinearForm, symbol: str | None = None) -> list[str]:
    symbol = symbol or form.label
    lines = []
    for (a, b), v in form.nonzero_entries():
        lines.append(f"{symbol}^{{{a + 1}{b + 1}}} = {format_rational(v)}")
    if form.inverse is not None:
        for (a, b), v in form.nonzero_entries(lower=True):
            lines.append(f"{symbol}_{{{a + 1}{b + 1}}} = {format_rational(v)}")
    return lines
