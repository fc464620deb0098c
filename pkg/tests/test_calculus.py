from __future__ import annotations

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from qcverify.calculus import Calculus, MissingGenusOne
from qcverify.models import builtin

idx3 = st.integers(0, 2)


def at_origin(v):
    return [s.at_origin() for s in v.coeffs]


def coeff(v, a, t=(0, 0, 0), q=(0,)):
    return v.coeffs[a].coefficient(t, q)


def test_small_quantum_products_of_p2(p2_calc):
    c = p2_calc
    H, P = c.basis(1), c.basis(2)
    hh, hp, pp = c.product(H, H), c.product(H, P), c.product(P, P)
    # H.H = P classically; the other two products need one line
    assert [coeff(hh, a) for a in range(3)] == [0, 0, 1]
    assert [coeff(hp, a, q=(1,)) for a in range(3)] == [1, 0, 0]
    assert [coeff(pp, a, q=(1,)) for a in range(3)] == [0, 1, 0]


@given(idx3, idx3, idx3)
@settings(max_examples=27, deadline=None)
def test_product_commutative_and_associative(p2_calc, a, b, s):
    c = p2_calc
    x, y, z = c.basis(a), c.basis(b), c.basis(s)
    assert (c.product(x, y) - c.product(y, x)).vanishes_through()
    lhs = c.product(c.product(x, y), z)
    rhs = c.product(x, c.product(y, z))
    assert (lhs - rhs).vanishes_through()


def test_unit_and_euler_field(p2_calc):
    c = p2_calc
    h = c.basis(1)
    assert (c.product(c.basis(0), h) - h).vanishes_through()
    E = c.E(1)
    assert at_origin(E) == [0, 3, 0]
    assert E.coeffs[0].to_str() == "t1"
    assert E.coeffs[2].to_str() == "-t3"
    assert (c.E(0) - c.basis(0)).vanishes_through()
    assert (c.E(2) - c.product(E, E)).vanishes_through()
    assert c.E(-1).is_zero()


def test_grading_operator(p2_calc):
    g = p2_calc.G(p2_calc.constant_field([1, 1, 1]))
    assert at_origin(g) == [mpq(-1, 2), mpq(1, 2), mpq(3, 2)]


def test_genus_one_correlators_need_f1():
    c = Calculus(builtin("p2"))
    assert not c.has_f1
    with pytest.raises(MissingGenusOne):
        c.corr1(c.basis(1))
    assert c.with_f1(c.space.zero()).has_f1


def test_with_f1_shares_genus_zero_data(p1_calc):
    other = p1_calc.with_f1(p1_calc.space.zero())
    assert other.corr1(p1_calc.basis(1)).is_zero()
    assert other.corr0(*[p1_calc.basis(1)] * 3) == p1_calc.corr0(*[p1_calc.basis(1)] * 3)


def test_delta_on_p1(p1_calc):
    # Delta = sum_a gamma^a o gamma_a = 2 gamma_2 at t = 0 on P^1
    assert at_origin(p1_calc.delta()) == [0, 2]


@given(st.integers(0, 1), st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=18, deadline=None)
def test_derivative_rule(p2_calc, g, a, b):
    c = p2_calc
    res = c.derivative_rule_residual(g, c.basis(a), [c.E(1), c.basis(b)])
    assert res.vanishes_through()
