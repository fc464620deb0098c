from __future__ import annotations

import pytest

from qcverify.phi import dphi_explicit, gap_string_residual, genus1_gap, phi, phi_alt, virasoro_type_phi_residual


def test_phi_zero_vanishes(point_calc, p1_calc, p2_calc):
    for c in (point_calc, p1_calc, p2_calc):
        assert phi(c, 0).value.is_zero()


def test_phi_one_constants(p1_calc, p2_calc):
    assert phi(p1_calc, 1).value.to_str() == "-1/12"
    assert phi(p2_calc, 1).value.to_str() == "-3/8"


@pytest.mark.parametrize("k", range(0, 4))
def test_two_phi_formulas_agree_on_p2(p2_calc, k):
    a, b = phi(p2_calc, k), phi_alt(p2_calc, k)
    assert a.formula_used != b.formula_used
    assert (a.value - b.value).vanishes_through()


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_explicit_derivative_of_phi(p2_calc, k, alpha):
    direct = phi(p2_calc, k).value.deriv(alpha)
    assert (dphi_explicit(p2_calc, alpha, k) - direct).vanishes_through()


@pytest.mark.parametrize("k, m", [(0, 2), (1, 3), (2, 3)])
def test_virasoro_type_relation(p1_calc, k, m):
    assert virasoro_type_phi_residual(p1_calc, k, m).vanishes_through()


@pytest.mark.parametrize("k", range(0, 4))
def test_gap_vanishes_with_the_true_genus_one_potential(p1_calc, p2_calc, k):
    assert genus1_gap(p1_calc, k).vanishes_through()
    assert genus1_gap(p2_calc, k).vanishes_through()
    assert gap_string_residual(p2_calc, k).vanishes_through()


def test_gap_sees_a_perturbed_potential(p1_calc):
    sp = p1_calc.space
    bad = p1_calc.with_f1(p1_calc.model.F1 + sp.monomial((0, 0), (1,)))
    assert genus1_gap(bad, 2).first_nonzero() is not None
    assert genus1_gap(bad, 0).vanishes_through()


def test_negative_order_rejected(p1_calc):
    with pytest.raises(ValueError):
        dphi_explicit(p1_calc, 0, -1)
    assert genus1_gap(p1_calc, -2).is_zero()
