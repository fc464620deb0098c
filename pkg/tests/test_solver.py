from __future__ import annotations

import warnings

import pytest
from gmpy2 import mpq

from qcverify.models import builtin, p2_model
from qcverify.series import Monomial
from qcverify.solver import (
    SolverError,
    build_ansatz,
    elliptic_invariants,
    required_trunc,
    solve_f1_getzler,
    solve_f1_l1,
)

SOLVERS = [solve_f1_getzler, solve_f1_l1]


def p2_at(method: str, d_max: int = 3):
    bare = builtin("p2", 8, d_max)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return builtin("p2", required_trunc(bare, method), d_max)


def test_p2_ansatz_is_pruned_to_one_slot_per_degree():
    ans = build_ansatz(builtin("p2", 12, 3))
    assert ans.slots == tuple(Monomial((0, 0, 3 * d), (d,)) for d in (1, 2, 3))
    assert ans.fixed_part.to_str() == "-1/8*t2"


def test_p1_ansatz():
    m = builtin("p1", 6, 3)
    assert build_ansatz(m).slots == ()
    assert [str(s) for s in build_ansatz(m, quasi_homogeneous=False).slots] == ["q", "q^2", "q^3"]


def test_required_truncation():
    bare = builtin("p2", 8, 3)
    assert required_trunc(bare, "getzler") == 12
    assert required_trunc(bare, "l1") == 11
    assert required_trunc(builtin("p1"), "getzler") == 3


@pytest.mark.parametrize("solver", SOLVERS)
def test_point_and_p1(solver):
    r = solver(builtin("point"))
    assert r.determined and r.f1.is_zero() and r.verified
    r = solver(builtin("p1"))
    assert r.determined and r.f1.to_str() == "-1/24*t2" and r.verified


@pytest.mark.parametrize("method", ["getzler", "l1"])
def test_p2_low_degree_elliptic_invariants(method):
    solver = solve_f1_getzler if method == "getzler" else solve_f1_l1
    r = solver(p2_at(method))
    assert r.consistent and r.determined and r.verified
    assert elliptic_invariants(r) == [(1, 0), (2, 0), (3, 1)]
    assert r.value_of(Monomial((0, 0, 9), (3,))) == mpq(1, 362880)


def test_the_two_routes_agree_on_p2():
    a = solve_f1_getzler(p2_at("getzler"))
    b = solve_f1_l1(p2_at("getzler"))
    assert a.f1 == b.f1


def test_p1_full_slot_set_solves_to_zero_by_l1():
    m = builtin("p1", 6, 3)
    r = solve_f1_l1(m, build_ansatz(m, quasi_homogeneous=False))
    assert r.determined and r.values == [0, 0, 0]
    assert r.f1.to_str() == "-1/24*t2"


def test_invisible_slots_are_reported_free():
    r = solve_f1_getzler(builtin("p2", 8, 3), verify=False)
    assert r.consistent
    assert r.free_slots == [Monomial((0, 0, 6), (2,))]
    assert r.f1 is None and not r.determined
    with pytest.raises(SolverError):
        elliptic_invariants(r)


def test_wrong_genus_zero_data_is_detected():
    bad = p2_model(12, 3, overrides={2: 2})
    assert not solve_f1_getzler(bad).consistent
    # the l1 route has one row per slot, so the error only shows in the substitution check
    r = solve_f1_l1(bad)
    assert r.determined and r.verified is False


def test_solver_ignores_a_present_f1():
    m = builtin("p1")
    m = m.with_f1(m.F1 + m.space.monomial((0, 0), (1,)))
    assert solve_f1_l1(m).f1.to_str() == "-1/24*t2"


def test_report_serialisation():
    d = solve_f1_l1(p2_at("l1")).to_dict()
    assert d["consistent"] and d["verified"]
    assert [s["value"] for s in d["slots"]] == ["0", "0", "1/362880"]


def test_row_constants_scale_with_the_genus_zero_input():
    from qcverify.calculus import Calculus
    from qcverify.getzler import g0, g1
    from qcverify.solver import _rows

    m = p2_at("getzler").with_f1(None)
    ans = build_ansatz(m)

    def builder(scale):
        def build(c):
            vs = (c.E(1), c.E(1), c.basis(1), c.basis(2))
            return g0(c, *vs).scale(scale), g1(c, *vs)
        return build

    # rhs = -(scale * G0 + G1[fixed part]) is affine in the scale; scale 1 is avoided since
    # there the two parts cancel and the 0 = 0 rows are dropped
    (a1, b1), (a2, b2), (a3, b3) = (_rows(Calculus(m), ans, [builder(k)]) for k in (2, 3, 4))
    assert a1 == a2 == a3 and len(b1) == len(b2) == len(b3)
    step = [y - x for x, y in zip(b1, b2)]
    assert step == [y - x for x, y in zip(b2, b3)]
    assert any(step)
