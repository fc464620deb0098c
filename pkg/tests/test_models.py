from __future__ import annotations

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from qcverify.calculus import Calculus
from qcverify.identities import check_identity
from qcverify.model import ModelError
from qcverify.models import builtin, kontsevich_n, novikov_invariants, p2_model, resolve_model


def test_kontsevich_numbers():
    assert [kontsevich_n(d) for d in range(1, 6)] == [1, 1, 12, 620, 87304]
    with pytest.raises(ValueError):
        kontsevich_n(0)


@given(st.integers(1, 12))
def test_kontsevich_numbers_are_positive_integers(d):
    n = kontsevich_n(d)
    assert n > 0 and n.denominator == 1


def test_p2_potential_coefficients_are_the_recursion_numbers():
    m = builtin("p2", trunc_t=14, d_max=5)
    assert novikov_invariants(m.F0) == [(d, kontsevich_n(d)) for d in range(1, 6)]


def test_p2_warns_when_truncation_hides_a_degree():
    with pytest.warns(UserWarning, match="degree-4"):
        m = p2_model(trunc_t=8, d_max=4)
    assert max(mono.q_degree for mono, _ in m.F0.items()) == 3


def test_builtin_shapes():
    point, p1, p2 = builtin("point"), builtin("p1"), builtin("p2")
    assert (point.N, point.dimension, point.F1.is_zero()) == (1, 0, True)
    assert (p1.N, p1.dimension, p1.F1.to_str()) == (2, 1, "-1/24*t2")
    assert (p2.N, p2.dimension, p2.F1) == (3, 2, None)
    assert all(mono.q_degree == 0 for mono, _ in builtin("p2-classical").F0.items())
    with pytest.raises(KeyError):
        builtin("p3")


def test_p1_genus_one_euler_constant():
    c = Calculus(builtin("p1"))
    assert c.corr1(c.E(1)).to_str() == "-1/12"


def test_wdvv_detects_a_wrong_degree_three_number():
    bad = p2_model(trunc_t=8, d_max=3, overrides={3: 13})
    rep = check_identity(Calculus(bad), "wdvv", alpha=2, beta=2, sigma=1, mu=1)
    assert not rep.passed
    assert rep.witness[0].q_degree == 3


def test_resolve_model_reads_files(tmp_path):
    from qcverify.model import save_model

    path = tmp_path / "m.json"
    save_model(builtin("p1", trunc_t=5), path)
    assert resolve_model(str(path)).trunc_t == 5
    assert resolve_model(str(path), trunc_t=4).trunc_t == 4
    assert resolve_model("builtin:p2", 9, 2).trunc_q == 2


def test_novikov_invariants_need_one_term_per_degree():
    m = builtin("p2", trunc_t=8, d_max=2)
    two = m.F0 + m.space.monomial((0, 0, 1), (1,), mpq(1))
    with pytest.raises(ModelError):
        novikov_invariants(two)


@pytest.mark.parametrize("d", [4, 5])
def test_wdvv_sees_high_degree_numbers(d):
    from qcverify.identities import run_suite

    good = run_suite(Calculus(p2_model(14, 5)), "axioms", names=["wdvv"])
    bad = run_suite(Calculus(p2_model(14, 5, overrides={d: kontsevich_n(d) + 1})), "axioms", names=["wdvv"])
    assert good.passed
    assert {r.witness[0].q_degree for r in bad.failures()} == {d}
