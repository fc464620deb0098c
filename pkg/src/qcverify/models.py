"""Builtin models: the point, P^1, P^2 and their classical truncations."""

from __future__ import annotations

import warnings
from functools import lru_cache
from math import comb, factorial, prod
from typing import Any, Mapping

from gmpy2 import mpq

from .model import FrobeniusModel, ModelError, genus1_classical_part, load_model
from .series import Rational, TruncatedSeries

__all__ = ["BUILTINS", "builtin", "kontsevich_n", "novikov_invariants", "point_model", "p1_model", "p2_model", "resolve_model"]

BUILTINS = ("point", "p1", "p2", "p1-classical", "p2-classical")

DEFAULT_TRUNC_T = 8
DEFAULT_D_MAX = 3


@lru_cache(maxsize=None)
def _kontsevich_int(d: int) -> int:
    if d == 1:
        return 1
    total = 0
    for d1 in range(1, d):
        d2 = d - d1
        total += _kontsevich_int(d1) * _kontsevich_int(d2) * (
            d1 * d1 * d2 * d2 * comb(3 * d - 4, 3 * d1 - 2)
            - d1 ** 3 * d2 * comb(3 * d - 4, 3 * d1 - 1)
        )
    return total


def kontsevich_n(d: int) -> Rational:
    """Number of rational plane curves of degree d through 3d-1 points."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    return mpq(_kontsevich_int(d))


def _term(coeff: Any, t_exp: list[int], q_exp: list[int]) -> dict[str, Any]:
    return {"coeff": str(mpq(coeff)), "t_exp": t_exp, "q_exp": q_exp}


def _check_orders(trunc_t: int, d_max: int) -> None:
    if trunc_t < 3 or d_max < 0:
        raise ValueError("builtin models need trunc_t >= 3 and d_max >= 0")


def point_model(trunc_t: int = DEFAULT_TRUNC_T, d_max: int = DEFAULT_D_MAX) -> FrobeniusModel:
    _check_orders(trunc_t, d_max)
    doc = {
        "name": "point",
        "dimension": 0,
        "basis": [{"label": "1", "p": 0}],
        "eta": [["1"]],
        "c1_matrix": [["0"]],
        "euler_const": ["0"],
        "novikov": {"count": 0, "charges": [[]], "max_degree": d_max},
        "t_degree": trunc_t,
        "chi": "1",
        "c1_cdm1": "0",
        "intersections_c_dm1": ["0"],
        "F0": [_term(mpq(1, 6), [3], [])],
        "F1": [],
    }
    return load_model(doc)


def p1_model(trunc_t: int = DEFAULT_TRUNC_T, d_max: int = DEFAULT_D_MAX,
             classical: bool = False) -> FrobeniusModel:
    _check_orders(trunc_t, d_max)
    f0 = [_term(mpq(1, 2), [2, 1], [0])]
    if not classical and d_max >= 1:
        f0.append(_term(1, [0, 0], [1]))
    doc = {
        "name": "p1-classical" if classical else "p1",
        "dimension": 1,
        "basis": [{"label": "1", "p": 0}, {"label": "w", "p": 1}],
        "eta": [["0", "1"], ["1", "0"]],
        "c1_matrix": [["0", "2"], ["0", "0"]],
        "euler_const": ["0", "2"],
        "novikov": {"count": 1, "charges": [[0], [1]], "max_degree": d_max},
        "t_degree": trunc_t,
        "chi": "2",
        "c1_cdm1": "2",
        "intersections_c_dm1": ["0", "1"],
        "F0": f0,
        "F1": [_term(mpq(-1, 24), [0, 1], [0])],
    }
    return load_model(doc)


def p2_model(trunc_t: int = DEFAULT_TRUNC_T, d_max: int = DEFAULT_D_MAX,
             classical: bool = False, overrides: Mapping[int, Any] | None = None) -> FrobeniusModel:
    """P^2 with F0 from the Kontsevich numbers; F1 is left empty.

    ``overrides`` replaces individual N_d (used for negative testing).
    """
    _check_orders(trunc_t, d_max)
    f0 = [_term(mpq(1, 2), [2, 0, 1], [0]), _term(mpq(1, 2), [1, 2, 0], [0])]
    if not classical:
        for d in range(1, d_max + 1):
            e = 3 * d - 1
            if e > trunc_t:
                warnings.warn(
                    f"P2: degree-{d} term needs t3^{e} but trunc_t = {trunc_t}; "
                    f"Novikov degrees >= {d} are not represented",
                    stacklevel=2,
                )
                break
            n_d = mpq(overrides[d]) if overrides and d in overrides else kontsevich_n(d)
            f0.append(_term(n_d / factorial(e), [0, 0, e], [d]))
    doc = {
        "name": "p2-classical" if classical else "p2",
        "dimension": 2,
        "basis": [{"label": "1", "p": 0}, {"label": "H", "p": 1}, {"label": "P", "p": 2}],
        "eta": [["0", "0", "1"], ["0", "1", "0"], ["1", "0", "0"]],
        "c1_matrix": [["0", "3", "0"], ["0", "0", "3"], ["0", "0", "0"]],
        "euler_const": ["0", "3", "0"],
        "novikov": {"count": 1, "charges": [[0], [1], [0]], "max_degree": d_max},
        "t_degree": trunc_t,
        "chi": "3",
        "c1_cdm1": "9",
        "intersections_c_dm1": ["0", "3", "0"],
        "F0": f0,
    }
    model = load_model(doc)
    if classical:
        model = model.with_f1(genus1_classical_part(model))
    return model


def builtin(name: str, trunc_t: int = DEFAULT_TRUNC_T, d_max: int = DEFAULT_D_MAX) -> FrobeniusModel:
    if name == "point":
        return point_model(trunc_t, d_max)
    if name == "p1":
        return p1_model(trunc_t, d_max)
    if name == "p1-classical":
        return p1_model(trunc_t, d_max, classical=True)
    if name == "p2":
        return p2_model(trunc_t, d_max)
    if name == "p2-classical":
        return p2_model(trunc_t, d_max, classical=True)
    raise KeyError(f"unknown builtin model {name!r}; choose from {', '.join(BUILTINS)}")


def resolve_model(ref: str, trunc_t: int | None = None, d_max: int | None = None) -> FrobeniusModel:
    """``builtin:NAME`` or a path to a model file, with optional re-truncation."""
    if ref.startswith("builtin:"):
        return builtin(
            ref.split(":", 1)[1],
            DEFAULT_TRUNC_T if trunc_t is None else trunc_t,
            DEFAULT_D_MAX if d_max is None else d_max,
        )
    model = load_model(ref)
    if trunc_t is not None or d_max is not None:
        model = model.with_truncation(trunc_t, d_max)
    return model


def novikov_invariants(series: TruncatedSeries) -> list[tuple[int, Rational]]:
    """(d, coefficient * prod(m_a!)) for the single q^d term of each Novikov degree."""
    by_degree: dict[int, Rational] = {}
    for mono, coeff in series.items():
        d = mono.q_degree
        if d == 0:
            continue
        if d in by_degree:
            raise ModelError(f"several terms of Novikov degree {d}; no single invariant")
        by_degree[d] = coeff * prod(factorial(e) for e in mono.t)
    return sorted(by_degree.items())
