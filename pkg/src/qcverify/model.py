"""Frobenius models: metric, grading, Chern data and the potentials F0, F1.

Models are read from and written to a small JSON format::

    {"name": ..., "dimension": d,
     "basis": [{"label": "1", "p": 0}, ...],
     "eta": [["0", "1"], ["1", "0"]],
     "c1_matrix": [[...]], "euler_const": [...],
     "novikov": {"count": r, "charges": [[...]], "max_degree": d_max},
     "t_degree": D, "chi": "2", "c1_cdm1": "2",
     "intersections_c_dm1": [...],
     "F0": [{"coeff": "1/2", "t_exp": [2, 1], "q_exp": [0]}, ...],
     "F1": [...]}                                   # optional

Rationals are strings such as ``"-3/4"`` or ``"5"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Mapping, Sequence

import jsonschema
from gmpy2 import mpq

from .linalg import inverse
from .series import (
    Rational,
    SeriesSpace,
    ShapeError,
    TruncatedSeries,
    format_rational,
    rational,
)

__all__ = [
    "ModelError",
    "FrobeniusModel",
    "load_model",
    "dump_model",
    "save_model",
    "genus1_classical_part",
    "MODEL_SCHEMA",
]


class ModelError(ValueError):
    """A model document is malformed or violates a structural invariant."""


_RAT = {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}
_TERMS = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["coeff", "t_exp", "q_exp"],
        "properties": {
            "coeff": _RAT,
            "t_exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "q_exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
        "additionalProperties": False,
    },
}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _RAT}}

MODEL_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": [
        "name", "dimension", "basis", "eta", "c1_matrix", "euler_const",
        "novikov", "t_degree", "chi", "c1_cdm1", "F0",
    ],
    "properties": {
        "name": {"type": "string"},
        "dimension": {"type": "integer", "minimum": 0},
        "basis": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["label", "p"],
                "properties": {"label": {"type": "string"}, "p": {"type": "integer", "minimum": 0}},
                "additionalProperties": False,
            },
        },
        "eta": _MATRIX,
        "c1_matrix": _MATRIX,
        "euler_const": {"type": "array", "items": _RAT},
        "novikov": {
            "type": "object",
            "required": ["count", "charges", "max_degree"],
            "properties": {
                "count": {"type": "integer", "minimum": 0},
                "charges": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                "max_degree": {"type": "integer", "minimum": 0},
            },
            "additionalProperties": False,
        },
        "t_degree": {"type": "integer", "minimum": 0},
        "chi": _RAT,
        "c1_cdm1": _RAT,
        "intersections_c_dm1": {"type": "array", "items": _RAT},
        "F0": _TERMS,
        "F1": _TERMS,
    },
    "additionalProperties": False,
}


Vector = tuple[Rational, ...]
Square = tuple[tuple[Rational, ...], ...]


@dataclass(frozen=True, eq=False)
class FrobeniusModel:
    name: str
    dimension: int
    labels: tuple[str, ...]
    p: tuple[int, ...]
    eta: Square
    eta_inv: Square
    c1_matrix: Square
    euler_const: Vector
    space: SeriesSpace
    chi: Rational
    c1_cdm1: Rational
    intersections_c_dm1: Vector | None
    F0: TruncatedSeries
    F1: TruncatedSeries | None = None

    @property
    def N(self) -> int:
        return len(self.p)

    @property
    def d(self) -> int:
        return self.dimension

    @property
    def r(self) -> int:
        return self.space.n_q

    @property
    def charges(self) -> tuple[tuple[int, ...], ...]:
        return self.space.charges

    @property
    def trunc_t(self) -> int:
        return self.space.trunc_t

    @property
    def trunc_q(self) -> int:
        return self.space.trunc_q

    @property
    def b(self) -> Vector:
        shift = mpq(self.dimension - 1, 2)
        return tuple(mpq(p) - shift for p in self.p)

    @property
    def b1(self) -> Rational:
        return self.b[0]

    @property
    def c1_lower(self) -> Square:
        """C_{ab} = sum_m C_a^m eta_{mb}."""
        n = self.N
        return tuple(
            tuple(sum((self.c1_matrix[a][m] * self.eta[m][b] for m in range(n)), mpq(0)) for b in range(n))
            for a in range(n)
        )

    @property
    def divisor_directions(self) -> tuple[int, ...]:
        return tuple(a for a, row in enumerate(self.charges) if any(row))

    def with_f1(self, f1: TruncatedSeries | None) -> FrobeniusModel:
        if f1 is not None:
            if f1.space != self.space:
                raise ShapeError("F1 must live in the model's series space")
            _check_no_t1(f1)
        return replace(self, F1=f1)

    def with_f0(self, f0: TruncatedSeries) -> FrobeniusModel:
        if f0.space != self.space:
            raise ShapeError("F0 must live in the model's series space")
        return replace(self, F0=f0)

    def with_truncation(self, trunc_t: int | None = None, trunc_q: int | None = None) -> FrobeniusModel:
        """Re-truncate the potentials (raising orders keeps their valid_t)."""
        space = self.space.with_truncation(trunc_t, trunc_q)
        return replace(
            self,
            space=space,
            F0=self.F0.to_space(space),
            F1=None if self.F1 is None else self.F1.to_space(space),
        )

    def __repr__(self) -> str:
        return (f"FrobeniusModel({self.name!r}, d={self.dimension}, N={self.N}, "
                f"trunc_t={self.trunc_t}, d_max={self.trunc_q})")


def _check_no_t1(f1: TruncatedSeries) -> None:
    for mono, _ in f1.items():
        if mono.t[0]:
            raise ModelError("F1 must not depend on t^1")


def _matrix(rows: Sequence[Sequence[str]], n: int, what: str) -> Square:
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ModelError(f"{what} must be a {n}x{n} matrix")
    return tuple(tuple(rational(x) for x in r) for r in rows)


def _vector(items: Sequence[str], n: int, what: str) -> Vector:
    if len(items) != n:
        raise ModelError(f"{what} must have length {n}")
    return tuple(rational(x) for x in items)


def _terms(space: SeriesSpace, terms: Sequence[Mapping[str, Any]], what: str) -> TruncatedSeries:
    triples = []
    for t in terms:
        if len(t["t_exp"]) != space.n_t or len(t["q_exp"]) != space.n_q:
            raise ModelError(f"{what}: exponent vector of wrong length in {t}")
        triples.append((t["t_exp"], t["q_exp"], t["coeff"]))
    return space.from_terms(triples)


def _read_document(document: Mapping[str, Any] | str | Path) -> Mapping[str, Any]:
    if isinstance(document, Mapping):
        return document
    if isinstance(document, Path) or not str(document).lstrip().startswith("{"):
        try:
            text = Path(document).read_text(encoding="utf-8")
        except OSError as exc:
            raise ModelError(f"cannot read model file {document}: {exc}") from exc
    else:
        text = str(document)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"model file is not valid JSON: {exc}") from exc


def load_model(document: Mapping[str, Any] | str | Path) -> FrobeniusModel:
    """Parse and validate a model document (mapping, JSON text or path)."""
    doc = _read_document(document)
    try:
        jsonschema.validate(doc, MODEL_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise ModelError(f"schema violation at {where}: {exc.message}") from exc

    n = len(doc["basis"])
    labels = tuple(b["label"] for b in doc["basis"])
    p = tuple(b["p"] for b in doc["basis"])
    dim = doc["dimension"]
    eta = _matrix(doc["eta"], n, "eta")
    c1 = _matrix(doc["c1_matrix"], n, "c1_matrix")
    euler = _vector(doc["euler_const"], n, "euler_const")
    nov = doc["novikov"]
    r = nov["count"]
    charges = nov["charges"]
    if len(charges) != n or any(len(row) != r for row in charges):
        raise ModelError(f"novikov charges must be a {n}x{r} matrix")
    inter = doc.get("intersections_c_dm1")
    inter_v = _vector(inter, n, "intersections_c_dm1") if inter is not None else None

    if any(eta[a][b] != eta[b][a] for a in range(n) for b in range(n)):
        raise ModelError("eta is not symmetric")
    try:
        eta_inv = tuple(tuple(row) for row in inverse(eta))
    except ZeroDivisionError as exc:
        raise ModelError("eta is singular") from exc
    if p[0] != 0:
        raise ModelError("the first basis class must be the identity (p_1 = 0)")
    if any(x > dim for x in p):
        raise ModelError("Hodge degree exceeds the dimension")
    shift = mpq(dim - 1, 2)
    b = [mpq(x) - shift for x in p]
    for a in range(n):
        for c in range(n):
            if eta[a][c] and b[a] + b[c] != 1:
                raise ModelError(
                    f"eta[{a + 1}][{c + 1}] != 0 but b_{a + 1} + b_{c + 1} = {b[a] + b[c]} (expected 1)"
                )

    try:
        space = SeriesSpace(n, r, doc["t_degree"], nov["max_degree"], charges)
    except ShapeError as exc:
        raise ModelError(str(exc)) from exc
    f0 = _terms(space, doc["F0"], "F0")
    f1 = _terms(space, doc["F1"], "F1") if "F1" in doc else None

    model = FrobeniusModel(
        name=doc["name"],
        dimension=dim,
        labels=labels,
        p=p,
        eta=eta,
        eta_inv=eta_inv,
        c1_matrix=c1,
        euler_const=euler,
        space=space,
        chi=rational(doc["chi"]),
        c1_cdm1=rational(doc["c1_cdm1"]),
        intersections_c_dm1=inter_v,
        F0=f0,
    )
    cl = model.c1_lower
    if any(cl[a][c] != cl[c][a] for a in range(n) for c in range(n)):
        raise ModelError("C_{ab} = C_a^m eta_{mb} is not symmetric")
    if f1 is not None:
        _check_no_t1(f1)
        model = replace(model, F1=f1)
    return model


def _dump_terms(s: TruncatedSeries) -> list[dict[str, Any]]:
    out = [
        {"coeff": format_rational(c), "t_exp": list(m.t), "q_exp": list(m.q)}
        for m, c in s.items()
    ]
    out.sort(key=lambda t: (t["t_exp"], t["q_exp"]))
    return out


def dump_model(model: FrobeniusModel) -> dict[str, Any]:
    """Inverse of :func:`load_model` up to term ordering."""
    def mat(m: Square) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in m]

    doc: dict[str, Any] = {
        "name": model.name,
        "dimension": model.dimension,
        "basis": [{"label": l, "p": p} for l, p in zip(model.labels, model.p)],
        "eta": mat(model.eta),
        "c1_matrix": mat(model.c1_matrix),
        "euler_const": [format_rational(x) for x in model.euler_const],
        "novikov": {
            "count": model.r,
            "charges": [list(row) for row in model.charges],
            "max_degree": model.trunc_q,
        },
        "t_degree": model.trunc_t,
        "chi": format_rational(model.chi),
        "c1_cdm1": format_rational(model.c1_cdm1),
    }
    if model.intersections_c_dm1 is not None:
        doc["intersections_c_dm1"] = [format_rational(x) for x in model.intersections_c_dm1]
    doc["F0"] = _dump_terms(model.F0)
    if model.F1 is not None:
        doc["F1"] = _dump_terms(model.F1)
    return doc


def save_model(model: FrobeniusModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(dump_model(model), indent=1) + "\n", encoding="utf-8")


def genus1_classical_part(model: FrobeniusModel) -> TruncatedSeries:
    """-(1/24) sum_a t^a int(gamma_a c_{d-1}), the degree-zero part of F1."""
    if model.dimension == 0:
        return model.space.zero()
    if model.intersections_c_dm1 is None:
        raise ModelError("model has no intersections_c_dm1 data")
    out = model.space.zero()
    for a, x in enumerate(model.intersections_c_dm1):
        if x:
            out = out + model.space.variable(a).scale(-x / 24)
    return out
