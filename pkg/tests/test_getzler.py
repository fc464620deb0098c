from __future__ import annotations

from itertools import combinations_with_replacement

from qcverify.getzler import g0, g1, getzler, getzler_residual, semisimplicity_matrix


def basis_tuples(c):
    return list(combinations_with_replacement(range(c.N), 4))


def test_relation_holds_on_p1_basis_tuples(p1_calc):
    c = p1_calc
    for t in basis_tuples(c):
        assert getzler(c, *(c.basis(i) for i in t)).vanishes_through(), t


def test_relation_holds_on_p2_with_euler_powers(p2_calc):
    c = p2_calc
    E, g = c.E, c.basis
    for fields in [(E(1), E(1), g(1), g(2)), (E(2), g(2), g(2), g(1)), (E(3), E(1), g(0), g(2))]:
        assert getzler(c, *fields).vanishes_through()


def test_genus_zero_part_is_symmetric(p2_calc):
    c = p2_calc
    a = g0(c, c.basis(1), c.basis(2), c.E(1), c.basis(2))
    b = g0(c, c.E(1), c.basis(2), c.basis(2), c.basis(1))
    assert (a - b).vanishes_through()


def test_genus_one_part_is_linear_in_f1(p1_calc):
    c = p1_calc
    sp = c.space
    x, y = sp.monomial((0, 1), (1,)), sp.monomial((0, 0), (2,), 3)
    fields = (c.E(1), c.basis(1), c.basis(1), c.basis(0))
    lhs = g1(c.with_f1(x + y), *fields)
    rhs = g1(c.with_f1(x), *fields) + g1(c.with_f1(y), *fields)
    assert (lhs - rhs).vanishes_through()


def test_perturbed_potential_is_detected(p1_calc):
    c = p1_calc
    bad = c.with_f1(c.model.F1 + c.space.monomial((0, 0), (1,)))
    rep = getzler_residual(bad, *(bad.basis(i) for i in (1, 1, 1, 1)), params=(2, 2, 2, 2))
    assert not rep.passed
    assert rep.witness is not None


def test_semisimplicity_matrices(point_calc, p1_calc):
    # hand evaluation at t = 0, q = 1 from the three-point numbers
    a = semisimplicity_matrix(point_calc)
    assert a.matrix == ((1,),) and a.invertible
    b = semisimplicity_matrix(p1_calc)
    assert b.matrix == ((2, 0), (0, 2))
    assert b.symmetric and b.determinant == 4


def test_both_parts_are_symmetric_under_all_orderings(p2_calc):
    from itertools import permutations

    c = p2_calc
    fields = (c.E(1), c.basis(1), c.basis(1), c.basis(2))
    for part in (g0, g1):
        ref = part(c, *fields)
        for perm in permutations(fields):
            assert (part(c, *perm) - ref).vanishes_through()


def test_parts_cancel_on_euler_tuple(p2_calc):
    c = p2_calc
    fields = (c.E(1), c.basis(1), c.basis(1), c.basis(2))
    assert not g0(c, *fields).vanishes_through()
    assert (g0(c, *fields) + g1(c, *fields)).vanishes_through()


def test_unit_insertion_kills_each_part(p1_calc, p2_calc):
    for c in (p1_calc, p2_calc):
        for t in combinations_with_replacement(range(c.N), 3):
            fields = (c.basis(0), *(c.basis(i) for i in t))
            assert g0(c, *fields).vanishes_through(), t
            assert g1(c, *fields).vanishes_through(), t
