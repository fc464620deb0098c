from __future__ import annotations

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from qcverify.linalg import determinant, eliminate, inverse, rank, solve_linear

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows: int, cols: int):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def as_sympy(a) -> sp.Matrix:
    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in a])


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: matrices(r, c))))
def test_rank_agrees_with_sympy(a):
    assert rank(a) == as_sympy(a).rank()


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_determinant_agrees_with_sympy(a):
    d = as_sympy(a).det()
    assert determinant(a) == mpq(int(d.p), int(d.q))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n), st.lists(entries, min_size=n, max_size=n))))
@settings(max_examples=60)
def test_solution_satisfies_system(case):
    a, b = case
    res = eliminate(a, b)
    if res.rank < len(a):
        return
    x = solve_linear(a, b)
    for row, rhs in zip(a, b):
        assert sum(mpq(c) * v for c, v in zip(row, x)) == mpq(rhs)


def test_overdetermined_consistent_and_inconsistent():
    a = [[1, 0], [0, 1], [1, 1]]
    assert solve_linear(a, [1, 2, 3]) == [1, 2]
    assert not eliminate(a, [1, 2, 4]).consistent
    with pytest.raises(ValueError, match="inconsistent"):
        solve_linear(a, [1, 2, 4])


def test_underdetermined_reports_free_columns():
    res = eliminate([[1, 1, 0], [0, 0, 1]], [2, 5])
    assert res.consistent and res.rank == 2
    assert len(res.free_columns) == 1
    # the third unknown sits alone in its row, the first two are coupled
    assert res.determined() == [2]
    assert res.solution()[2] == 5


def test_inverse_roundtrip():
    a = [[2, 1], [mpq(1, 3), 4]]
    inv = inverse(a)
    prod = [[sum(mpq(a[i][k]) * inv[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]
