from __future__ import annotations

import pytest

from qcverify.calculus import Calculus, MissingGenusOne
from qcverify.identities import check_identity, evaluate_instance, flatten, run_suite
from qcverify.models import builtin
from qcverify.registry import REGISTRY, SUITES, Identity, Ops, display_params, identities_in, parameter_tuples


def test_every_suite_is_populated():
    for suite in SUITES:
        assert identities_in(suite), suite
    assert len(identities_in("appendix")) == 15
    assert len(identities_in("all")) == len(REGISTRY)
    with pytest.raises(KeyError):
        identities_in("nonsense")


def test_parameter_enumeration_all_and_sampled():
    wdvv = REGISTRY["wdvv"]
    assert len(list(parameter_tuples(wdvv, 3, 3))) == 3 ** 4
    sym = REGISTRY["string_0_higher"]
    assert len(list(parameter_tuples(sym, 3, 3, "sampled"))) == 15  # multisets of size 4 from 3
    assert len(list(parameter_tuples(sym, 3, 3, "all"))) == 81
    with pytest.raises(ValueError):
        list(parameter_tuples(wdvv, 3, 3, "random"))


def test_fixed_index_never_exceeds_k():
    ident = REGISTRY["appendix_A5"]
    tuples = list(parameter_tuples(ident, 2, 3))
    assert tuples and all(1 <= v[1] <= v[0] for v in tuples)


def test_slot_tuples_include_euler_powers():
    ident = REGISTRY["getzler_full"]
    tuples = [t[0] for t in parameter_tuples(ident, 2, 2)]
    assert ("g1", "g2", "E1", "E2") in tuples
    assert len(tuples) == 35  # multisets of size 4 from 4 slot names


def test_display_is_one_based():
    assert display_params(REGISTRY["wdvv"], (0, 1, 2, 0)) == (1, 2, 3, 1)
    assert display_params(REGISTRY["wdvv3"], (2, 0, 1, 0)) == (2, 1, 2, 1)


def test_flatten_labels():
    sp = builtin("p1").space
    c = Calculus(builtin("p1"))
    parts = flatten([sp.zero(), [c.basis(1), sp.one()]])
    assert [label for label, _ in parts] == ["part 1", "part 2.1[gamma_1]", "part 2.1[gamma_2]", "part 2.2"]
    with pytest.raises(TypeError):
        flatten(3)


def test_failing_component_is_named(p1_calc):
    def broken(o: Ops, alpha):
        return [o.c.space.zero(), o.C0(o.g(alpha), o.g(alpha), o.g(1))]

    ident = Identity("broken", "core", ("alpha",), broken)
    rep = evaluate_instance(Ops(p1_calc), ident, (0,))
    assert not rep.passed and rep.note == "part 2"
    assert rep.params == (1,)


def test_windows_follow_each_component(p1_calc):
    # a first derivative lowers the window by one, and a component is only judged inside its own window
    def uneven(o: Ops):
        f = o.c.potential(0)
        return [f.deriv(1), f.deriv(1).deriv(1).deriv(1)]

    rep = evaluate_instance(Ops(p1_calc), Identity("uneven", "core", (), uneven), ())
    assert rep.checked_valid_t == p1_calc.space.trunc_t - 3


def test_missing_f1_is_skipped_or_raised():
    c = Calculus(builtin("p2"))
    res = run_suite(c, "core", names=["g1_unit", "g0_unit"], k_max=1)
    assert res.skipped == ["g1_unit"]
    assert res.passed and {r.name for r in res.reports} == {"g0_unit"}
    with pytest.raises(MissingGenusOne):
        check_identity(c, "g1_unit", alpha=0, beta=0, sigma=0)
    # genus-parametrised identities only need F1 at g = 1
    assert check_identity(c, "quasihom_1", g=0, alpha=1).passed


def test_unknown_identity_names():
    with pytest.raises(KeyError):
        run_suite(Calculus(builtin("point")), names=["nope"])


def test_parallel_run_matches_serial(p1):
    c = Calculus(p1)
    serial = run_suite(c, "applications", k_max=2)
    parallel = run_suite(c, "applications", k_max=2, jobs=2)
    assert [(r.name, r.params, r.passed) for r in serial.reports] == \
        [(r.name, r.params, r.passed) for r in parallel.reports]


@pytest.mark.parametrize("suite", ["core", "derivations"])
def test_suites_pass_on_p1_sampled(p1_calc, suite):
    res = run_suite(p1_calc, suite, k_max=2, policy="sampled")
    assert res.passed, [(r.name, r.params, r.note) for r in res.failures()][:5]
    assert not res.skipped


def test_report_record_count_is_deterministic(point_calc):
    a = run_suite(point_calc, "core", k_max=2)
    b = run_suite(point_calc, "core", k_max=2)
    assert len(a.reports) == len(b.reports) > 0
    assert list(a.by_identity()) == list(b.by_identity())
