from __future__ import annotations

import warnings

import pytest

from qcverify.calculus import Calculus
from qcverify.models import builtin
from qcverify.solver import required_trunc, solve_f1_l1


def solved_p2(trunc_t: int = 8, d_max: int = 3):
    """P^2 at the requested truncation with F1 from the l1 solve at a sufficient truncation."""
    bare = builtin("p2", trunc_t, d_max)
    need = max(trunc_t, required_trunc(bare, "l1"))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = solve_f1_l1(builtin("p2", need, d_max), verify=False)
    assert report.determined
    return bare.with_f1(report.f1.to_space(bare.space))


@pytest.fixture(scope="session")
def point():
    return builtin("point")


@pytest.fixture(scope="session")
def p1():
    return builtin("p1")


@pytest.fixture(scope="session")
def p2():
    return solved_p2()


@pytest.fixture(scope="session")
def p1_calc(p1):
    return Calculus(p1)


@pytest.fixture(scope="session")
def p2_calc(p2):
    return Calculus(p2)


@pytest.fixture(scope="session")
def point_calc(point):
    return Calculus(point)
