from __future__ import annotations

import json

import jsonschema
import pytest
from gmpy2 import mpq
from rich.console import Console

from qcverify.report import (
    REPORT_SCHEMA,
    ResidualReport,
    make_report,
    render_table,
    reports_from_json,
    reports_to_json,
    summarize,
)
from qcverify.series import Monomial, SeriesSpace

SP = SeriesSpace(2, 1, 4, 2)


def sample():
    bad = SP.from_terms([((0, 2), (1,), "-3/7")])
    return [
        make_report("alpha_rule", (1, 2), SP.zero()),
        make_report("beta_rule", (2,), bad, anchor="x"),
    ]


def test_make_report_picks_lowest_witness():
    ok, bad = sample()
    assert ok.passed and ok.witness is None and ok.checked_valid_t == 4
    assert not bad.passed
    assert bad.witness == (Monomial((0, 2), (1,)), mpq(-3, 7))


def test_json_roundtrip_and_schema():
    text = reports_to_json(sample(), model="m")
    doc = json.loads(text)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["count"] == 2 and doc["passed"] is False and doc["model"] == "m"
    back = reports_from_json(text)
    assert [(r.name, r.passed, r.witness) for r in back] == [(r.name, r.passed, r.witness) for r in sample()]


def test_malformed_report_rejected():
    doc = json.loads(reports_to_json(sample()))
    doc["records"][1]["witness"]["value"] = "0.5"
    with pytest.raises(jsonschema.ValidationError):
        reports_from_json(json.dumps(doc))


def test_summary_and_table():
    recs = sample() + [ResidualReport("gamma_rule", (), -1, True)]
    assert summarize(recs) == {"total": 3, "passed": 2, "failed": 1, "vacuous": 1}
    console = Console(record=True, width=120)
    render_table(recs, console, failures_only=True)
    out = console.export_text()
    assert "beta_rule" in out and "alpha_rule" not in out
    assert "2/3 passed" in out
