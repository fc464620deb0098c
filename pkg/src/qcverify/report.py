"""Residual reports: one record per identity instance."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import jsonschema
from rich.console import Console
from rich.table import Table

from .series import Monomial, Rational, TruncatedSeries

__all__ = [
    "REPORT_SCHEMA",
    "ResidualReport",
    "make_report",
    "reports_to_json",
    "reports_from_json",
    "render_table",
    "summarize",
]

_WITNESS = {
    "type": "object",
    "required": ["t_exp", "q_exp", "monomial", "value"],
    "properties": {
        "t_exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "q_exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "monomial": {"type": "string"},
        "value": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
    },
}

REPORT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["records", "passed", "count"],
    "properties": {
        "passed": {"type": "boolean"},
        "count": {"type": "integer", "minimum": 0},
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "params", "window", "pass", "witness"],
                "properties": {
                    "name": {"type": "string"},
                    "params": {"type": "array"},
                    "window": {"type": "integer"},
                    "pass": {"type": "boolean"},
                    "witness": {"oneOf": [{"type": "null"}, _WITNESS]},
                    "note": {"type": "string"},
                },
            },
        },
    },
}


@dataclass
class ResidualReport:
    name: str
    params: tuple[Any, ...]
    checked_valid_t: int
    passed: bool
    witness: tuple[Monomial, Rational] | None = None
    anchor: str = ""
    residual: TruncatedSeries | None = field(default=None, repr=False, compare=False)
    note: str = ""

    @property
    def vacuous(self) -> bool:
        """True when the checked window is empty."""
        return self.checked_valid_t < 0

    def to_dict(self) -> dict[str, Any]:
        w = None
        if self.witness is not None:
            mono, value = self.witness
            w = {"t_exp": list(mono.t), "q_exp": list(mono.q), "monomial": str(mono), "value": str(value)}
        out = {
            "name": self.name,
            "params": list(self.params),
            "window": self.checked_valid_t,
            "pass": self.passed,
            "witness": w,
        }
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ResidualReport:
        from gmpy2 import mpq

        w = d.get("witness")
        witness = None
        if w is not None:
            witness = (Monomial(tuple(w["t_exp"]), tuple(w["q_exp"])), mpq(w["value"]))
        return cls(
            name=d["name"],
            params=tuple(d["params"]),
            checked_valid_t=d["window"],
            passed=d["pass"],
            witness=witness,
            note=d.get("note", ""),
        )


def make_report(name: str, params: Sequence[Any], residual: TruncatedSeries,
                anchor: str = "", keep_residual: bool = False) -> ResidualReport:
    window = residual.valid_t
    witness = residual.first_nonzero(window)
    return ResidualReport(
        name=name,
        params=tuple(params),
        checked_valid_t=window,
        passed=witness is None,
        witness=witness,
        anchor=anchor,
        residual=residual if keep_residual else None,
    )


def reports_to_json(reports: Iterable[ResidualReport], **extra: Any) -> str:
    recs = [r.to_dict() for r in reports]
    doc = {"records": recs, "passed": all(r["pass"] for r in recs), "count": len(recs)}
    doc.update(extra)
    return json.dumps(doc, indent=1)


def reports_from_json(text: str) -> list[ResidualReport]:
    """Parse and validate a JSON report document."""
    doc = json.loads(text)
    jsonschema.validate(doc, REPORT_SCHEMA)
    return [ResidualReport.from_dict(r) for r in doc["records"]]


def summarize(reports: Sequence[ResidualReport]) -> dict[str, int]:
    return {
        "total": len(reports),
        "passed": sum(r.passed for r in reports),
        "failed": sum(not r.passed for r in reports),
        "vacuous": sum(r.vacuous for r in reports),
    }


def render_table(reports: Sequence[ResidualReport], console: Console | None = None,
                 failures_only: bool = False, title: str | None = None) -> None:
    console = console or Console()
    table = Table(title=title)
    for col in ("identity", "params", "window", "result", "witness"):
        table.add_column(col)
    for r in reports:
        if failures_only and r.passed:
            continue
        wit = "" if r.witness is None else f"{r.witness[1]} * {r.witness[0]}"
        table.add_row(
            r.name,
            ",".join(str(p) for p in r.params),
            str(r.checked_valid_t),
            "pass" if r.passed else "FAIL",
            wit,
        )
    console.print(table)
    s = summarize(reports)
    console.print(f"{s['passed']}/{s['total']} passed, {s['failed']} failed, {s['vacuous']} with empty window")
