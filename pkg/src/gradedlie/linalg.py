"""Exact linear algebra over the rationals.

Rows are reduced fraction-free (integer row operations, content removed after
every step) so intermediate numbers stay small.  Only the final back
substitution to reduced row-echelon form uses Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Row = dict  # column index -> integer coefficient


class SingularMatrixError(ValueError):
    pass


def _integer_row(row: Mapping[int, Fraction | int]) -> Row:
    items = [(c, Fraction(v)) for c, v in row.items() if v != 0]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    out = {c: int(v * den) for c, v in items}
    return _primitive(out)


def _primitive(row: Row) -> Row:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


class EchelonBuilder:
    """Incremental fraction-free row reduction.

    Equations are added one at a time; each is reduced against the pivots
    found so far and, if anything survives, its leading column becomes a new
    pivot.  Pivots are therefore chosen deterministically: smallest surviving
    column of the earliest row that reaches it.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Row) -> Row:
        row = dict(row)
        while row:
            cols = sorted(c for c in row if c in self.pivots)
            if not cols:
                return row
            c = cols[0]
            prow = self.pivots[c]
            a, b = prow[c], row[c]
            new = {k: a * v for k, v in row.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new)
        return row

    def add(self, row: Mapping[int, Fraction | int]) -> bool:
        """Add an equation; returns True if it increased the rank."""
        r = self.reduce(_integer_row(row))
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def rref(self) -> dict[int, dict[int, Fraction]]:
        """Reduced row-echelon form keyed by pivot column (pivot entry 1)."""
        out: dict[int, dict[int, Fraction]] = {}
        for c in sorted(self.pivots, reverse=True):
            row = {k: Fraction(v, self.pivots[c][c]) for k, v in self.pivots[c].items()}
            for k in [k for k in row if k != c and k in out]:
                coef = row.pop(k)
                for kk, vv in out[k].items():
                    if kk == k:
                        continue
                    nv = row.get(kk, 0) - coef * vv
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
            out[c] = row
        return out

    def nullspace(self) -> list[list[Fraction]]:
        return _nullspace_from_rref(self.rref(), self.ncols)


def _nullspace_from_rref(rref: dict[int, dict[int, Fraction]], ncols: int) -> list[list[Fraction]]:
    free = [c for c in range(ncols) if c not in rref]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, row in rref.items():
            if f in row:
                v[p] = -row[f]
        basis.append(normalize_vector(v))
    return basis


def normalize_vector(v: Sequence[Fraction]) -> list[Fraction]:
    """Scale so that the first nonzero entry is +1."""
    for x in v:
        if x != 0:
            return [Fraction(y) / x for y in v]
    return [Fraction(y) for y in v]


def nullspace(rows: Iterable[Mapping[int, Fraction | int]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    eb = EchelonBuilder(ncols)
    for r in rows:
        eb.add(r)
    return eb.nullspace()


def rank(rows: Iterable[Mapping[int, Fraction | int]], ncols: int) -> int:
    eb = EchelonBuilder(ncols)
    for r in rows:
        eb.add(r)
    return eb.rank


def dense_rows(matrix: Sequence[Sequence]) -> list[dict[int, Fraction]]:
    return [{j: Fraction(v) for j, v in enumerate(row) if v != 0} for row in matrix]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x == 0:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j]:
                    oi[j] += x * bt[j]
    return out


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse; raises SingularMatrixError."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def solve_in_span(basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]):
    """Coefficients c with sum c_i basis_i == target, or None if not in the span."""
    k = len(basis)
    n = len(target)
    # unknowns c_0..c_{k-1} plus a homogenizing column k for -target
    rows = []
    for i in range(n):
        row = {j: basis[j][i] for j in range(k) if basis[j][i] != 0}
        if target[i] != 0:
            row[k] = -Fraction(target[i])
        if row:
            rows.append(row)
    for v in nullspace(rows, k + 1):
        if v[k] != 0:
            return [x / v[k] for x in v[:k]]
    return None
