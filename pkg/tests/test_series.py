from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from qcverify.series import Monomial, SeriesSpace, ShapeError, TruncatedSeries, rational, series_sum

SPACE = SeriesSpace(n_t=2, n_q=1, trunc_t=4, trunc_q=2, charges=[[0], [1]])
T1, T2, Q = sp.symbols("t1 t2 Q")

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(lambda x: x != 0)
terms = st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2), coeffs), max_size=8
)


@st.composite
def series(draw) -> TruncatedSeries:
    raw = draw(terms)
    return SPACE.from_terms([((a, b), (d,), c) for a, b, d, c in raw])


def to_sympy(s: TruncatedSeries) -> sp.Expr:
    return sum((sp.Rational(int(c.numerator), int(c.denominator)) * T1 ** m.t[0] * T2 ** m.t[1] * Q ** m.q[0]
                for m, c in s.items()), sp.Integer(0))


def truncate(expr: sp.Expr) -> sp.Expr:
    poly = sp.Poly(sp.expand(expr), T1, T2, Q)
    keep = [(e, c) for e, c in poly.terms() if e[0] + e[1] <= SPACE.trunc_t and e[2] <= SPACE.trunc_q]
    return sum((c * T1 ** e[0] * T2 ** e[1] * Q ** e[2] for e, c in keep), sp.Integer(0))


@given(series(), series())
def test_product_matches_polynomial_multiplication(a, b):
    assert sp.expand(to_sympy(a * b) - truncate(to_sympy(a) * to_sympy(b))) == 0


@given(series(), series(), series())
@settings(max_examples=40)
def test_ring_laws(a, b, c):
    assert (a * b).same_terms(b * a)
    assert ((a * b) * c).same_terms(a * (b * c))
    assert (a * (b + c)).same_terms(a * b + a * c)
    assert (a - a).is_zero()


@given(series())
def test_divisor_derivative_carries_novikov_charge(a):
    # q^d stands for q^d e^{d t2}, so d/dt2 acts as the partial derivative plus the Euler operator in Q
    expected = sp.diff(to_sympy(a), T2) + Q * sp.diff(to_sympy(a), Q)
    assert sp.expand(to_sympy(a.deriv(1)) - expected) == 0
    assert sp.expand(to_sympy(a.deriv(0)) - sp.diff(to_sympy(a), T1)) == 0


@given(series(), series())
def test_leibniz_rule_inside_valid_window(a, b):
    lhs = (a * b).deriv(1)
    rhs = a.deriv(1) * b + a * b.deriv(1)
    assert (lhs - rhs).vanishes_through(lhs.valid_t)


def test_valid_degree_propagation():
    x = SPACE.variable(0)
    assert x.valid_t == 4
    assert x.deriv(0).valid_t == 3
    assert x.deriv(0).deriv(1).valid_t == 2
    assert (x + x.deriv(0)).valid_t == 3
    assert (x * x.deriv(0)).valid_t == 3


@given(st.lists(st.integers(0, 4), min_size=2, max_size=2), st.integers(0, 2))
def test_pack_roundtrip(t, d):
    if sum(t) > SPACE.trunc_t:
        assert not SPACE.fits(t, (d,))
        return
    assert SPACE.unpack(SPACE.pack(t, (d,))) == Monomial(tuple(t), (d,))


def test_terms_outside_truncation_rejected():
    with pytest.raises(ShapeError):
        TruncatedSeries(SPACE, {SPACE.pack((0, 0), (0,)) + 5: mpq(1)})
    assert SPACE.monomial((3, 2)).is_zero()


def test_rational_coercion():
    assert rational("-3/4") == mpq(-3, 4)
    assert rational(Fraction(5, 10)) == mpq(1, 2)
    with pytest.raises(TypeError):
        rational(True)
    with pytest.raises(ValueError):
        rational("x")


def test_to_str_and_first_nonzero():
    s = SPACE.from_terms([((0, 1), (0,), "-1/24"), ((0, 0), (1,), 1)])
    assert s.to_str() == "q - 1/24*t2"
    assert s.first_nonzero() == (Monomial((0, 0), (1,)), mpq(1))
    assert s.first_nonzero(-1) is None


def test_to_space_keeps_unknown_orders_unknown():
    small = SPACE.variable(1)
    big = small.to_space(SPACE.with_truncation(trunc_t=6))
    assert big.valid_t == 4
    assert small.to_space(SPACE.with_truncation(trunc_t=2)).valid_t == 2


def test_series_sum_matches_repeated_addition():
    parts = [SPACE.variable(0), SPACE.variable(1).deriv(1), SPACE.constant(3)]
    assert series_sum(SPACE, parts) == parts[0] + parts[1] + parts[2]


def test_mismatched_spaces_refuse_to_mix():
    with pytest.raises(ShapeError):
        SPACE.variable(0) + SPACE.with_truncation(trunc_t=3).variable(0)
