"""Graded matrices over a grade-sorted basis, the adjoint representation and
the commutant of ad."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import AlgebraElement, AlgebraSpec, Grade, format_rational, sign
from .linalg import matmul, nullspace


class GradedMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class GradedMatrix:
    """Dense square matrix of homogeneous degree over a graded basis.

    Entry (i, j) may be nonzero only when grade(i) == grade(j) + degree.
    """

    entries: tuple[tuple[Fraction, ...], ...]
    degree: Grade
    basis_grades: tuple[Grade, ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(self.basis_grades)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise GradedMatrixError("matrix shape does not match the basis")
        for i, j in self.forbidden_nonzeros():
            raise GradedMatrixError(f"entry ({i},{j}) violates the block pattern of degree {self.degree}")

    def forbidden_nonzeros(self):
        g = self.basis_grades
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x and g[i] != g[j] + self.degree:
                    yield i, j

    @classmethod
    def zero(cls, degree: Grade, basis_grades):
        n = len(basis_grades)
        return cls(tuple((Fraction(0),) * n for _ in range(n)), degree, tuple(basis_grades))

    @classmethod
    def identity(cls, basis_grades):
        n = len(basis_grades)
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)),
                   Grade.zero(basis_grades[0].rank), tuple(basis_grades))

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)

    def _check(self, other):
        if self.basis_grades != other.basis_grades:
            raise GradedMatrixError("size or basis mismatch")

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        self._check(other)
        return GradedMatrix(tuple(map(tuple, matmul(self.entries, other.entries))),
                            self.degree + other.degree, self.basis_grades)

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise GradedMatrixError("cannot add matrices of different degree")
        deg = other.degree if self.is_zero() else self.degree
        return GradedMatrix(tuple(tuple(x + y for x, y in zip(r, s))
                                  for r, s in zip(self.entries, other.entries)), deg, self.basis_grades)

    def __rmul__(self, k):
        return GradedMatrix(tuple(tuple(k * x for x in r) for r in self.entries),
                            self.degree, self.basis_grades)

    def __neg__(self):
        return (-1) * self

    def __sub__(self, other):
        return self + (-other)

    def block(self, row_grade: Grade, col_grade: Grade):
        g = self.basis_grades
        rows = [i for i in range(self.size) if g[i] == row_grade]
        cols = [j for j in range(self.size) if g[j] == col_grade]
        return [[self.entries[i][j] for j in cols] for i in rows]

    def __str__(self):
        return format_block_matrix(self)


def format_block_matrix(m: GradedMatrix) -> str:
    g = m.basis_grades
    width = max(len(format_rational(x)) for row in m.entries for x in row)
    lines = [f"degree {m.degree}"]
    for i, row in enumerate(m.entries):
        if i and g[i] != g[i - 1]:
            lines.append("")
        cells = []
        for j, x in enumerate(row):
            if j and g[j] != g[j - 1]:
                cells.append("|")
            cells.append(format_rational(x).rjust(width))
        lines.append(" ".join(cells))
    return "\n".join(lines)


def basis_grades(spec: AlgebraSpec) -> tuple[Grade, ...]:
    return tuple(g for _, g in spec.generators)


def adjoint_rep(spec: AlgebraSpec, a: int | str) -> GradedMatrix:
    """(ad X^a)_{ij} = f^{aj}_i"""
    if isinstance(a, str):
        a = spec.index(a)
    r = spec.dim
    rows = [[Fraction(0)] * r for _ in range(r)]
    for j in range(r):
        for i, v in spec.f(a, j).items():
            rows[i][j] = v
    return GradedMatrix(tuple(map(tuple, rows)), spec.grade(a), basis_grades(spec))


def adjoint_of_element(spec: AlgebraSpec, x: AlgebraElement) -> GradedMatrix:
    grades = basis_grades(spec)
    if x.is_zero():
        return GradedMatrix.zero(Grade.zero(spec.rank), grades)
    out = None
    for a, v in x.coeffs.items():
        term = v * adjoint_rep(spec, a)
        out = term if out is None else out + term
    return out


def supertrace(m: GradedMatrix) -> Fraction:
    return sum((x[i] if not g.parity else -x[i]
                for i, (x, g) in enumerate(zip(m.entries, m.basis_grades))), Fraction(0))


def graded_matrix_bracket(x: GradedMatrix, y: GradedMatrix) -> GradedMatrix:
    """xy - (-1)^{deg x . deg y} yx"""
    x._check(y)
    s = sign(x.degree, y.degree)
    xy, yx = x @ y, y @ x
    return GradedMatrix(tuple(tuple(p - s * q for p, q in zip(r1, r2))
                              for r1, r2 in zip(xy.entries, yx.entries)),
                        x.degree + y.degree, x.basis_grades)


def check_ad_homomorphism(spec: AlgebraSpec) -> list[tuple[str, str]]:
    """Pairs (a, b) where ad[X^a, X^b] != [ad X^a, ad X^b]."""
    ads = [adjoint_rep(spec, a) for a in range(spec.dim)]
    bad = []
    for a in range(spec.dim):
        for b in range(spec.dim):
            lhs = adjoint_of_element(spec, AlgebraElement(spec, spec.f(a, b)))
            rhs = graded_matrix_bracket(ads[a], ads[b])
            if lhs.entries != rhs.entries:
                bad.append((spec.names[a], spec.names[b]))
    return bad


def block_positions(grades: Sequence[Grade], degree: Grade) -> list[tuple[int, int]]:
    n = len(grades)
    return [(i, j) for i in range(n) for j in range(n) if grades[i] == grades[j] + degree]


def commutant(spec: AlgebraSpec, degree: Grade) -> list[GradedMatrix]:
    """Basis of {M of the given degree : [M, ad X^a] = 0 for all a}.

    Each basis matrix is normalized so that its first nonzero entry (row-major
    over the allowed positions) is +1.
    """
    grades = basis_grades(spec)
    pos = block_positions(grades, degree)
    col = {p: k for k, p in enumerate(pos)}
    n = spec.dim
    rows = []
    for a in range(n):
        ad = adjoint_rep(spec, a).entries
        s = sign(degree, spec.grade(a))
        # ([M, ad])_{ij} = sum_k M_ik ad_kj - s ad_ik M_kj
        for i in range(n):
            for j in range(n):
                eq: dict[int, Fraction] = {}
                for k in range(n):
                    if ad[k][j] and (i, k) in col:
                        c = col[(i, k)]
                        eq[c] = eq.get(c, 0) + ad[k][j]
                    if ad[i][k] and (k, j) in col:
                        c = col[(k, j)]
                        eq[c] = eq.get(c, 0) - s * ad[i][k]
                eq = {c: v for c, v in eq.items() if v}
                if eq:
                    rows.append(eq)
    out = []
    for vec in nullspace(rows, len(pos)):
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(pos, vec):
            m[i][j] = v
        out.append(GradedMatrix(tuple(map(tuple, m)), degree, grades))
    return out
