from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from gradedlie.linalg import (SingularMatrixError, dense_rows, identity, inverse, matmul, nullspace,
                              rank, solve_in_span)

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 6)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])


@given(matrices())
def test_rank_and_nullspace_against_sympy(m):
    ncols = len(m[0])
    ns = nullspace(dense_rows(m), ncols)
    assert rank(dense_rows(m), ncols) == to_sympy(m).rank()
    assert len(ns) == ncols - to_sympy(m).rank()
    for v in ns:
        assert all(sum(r[j] * v[j] for j in range(ncols)) == 0 for r in m)
        first = next(x for x in v if x)
        assert first == 1


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                      min_size=n, max_size=n)))
def test_inverse(m):
    if to_sympy(m).det() == 0:
        with pytest.raises(SingularMatrixError):
            inverse(m)
    else:
        assert matmul(m, inverse(m)) == identity(len(m))


def test_nullspace_is_deterministic():
    rows = [{0: 1, 1: 2, 2: 3}, {0: 2, 1: 4, 2: 6}]
    # one vector per free column, first nonzero entry scaled to +1
    assert nullspace(rows, 3) == [[1, Fraction(-1, 2), 0], [1, 0, Fraction(-1, 3)]]
    assert nullspace(rows, 3) == nullspace(list(reversed(rows)), 3)


def test_solve_in_span():
    basis = [[Fraction(1), 0, 1], [0, Fraction(1), 1]]
    assert solve_in_span(basis, [2, 3, 5]) == [2, 3]
    assert solve_in_span(basis, [1, 1, 1]) is None
    assert inverse([[2, 0], [0, 4]]) == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]
