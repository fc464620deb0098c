"""Running identity suites over enumerated parameter instances."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from . import appendix, axioms, derived  # noqa: F401  (populate the registry)
from .calculus import Calculus, MissingGenusOne, VectorField
from .model import FrobeniusModel
from .registry import (
    REGISTRY,
    SUITES,
    Identity,
    Ops,
    display_params,
    get_identity,
    identities_in,
    parameter_tuples,
)
from .report import ResidualReport
from .series import TruncatedSeries

__all__ = ["SuiteResult", "check_identity", "evaluate_instance", "flatten", "run_suite", "SUITES", "REGISTRY"]

log = logging.getLogger(__name__)


def flatten(residual: Any, label: str = "") -> list[tuple[str, TruncatedSeries]]:
    """Labelled scalar components of a residual (series, vector field or nested list)."""
    if isinstance(residual, TruncatedSeries):
        return [(label, residual)]
    if isinstance(residual, VectorField):
        return [(f"{label}[gamma_{a + 1}]" if label else f"gamma_{a + 1}", s) for a, s in enumerate(residual.coeffs)]
    if isinstance(residual, (list, tuple)):
        out = []
        for i, part in enumerate(residual):
            out += flatten(part, f"{label}.{i + 1}" if label else f"part {i + 1}")
        return out
    raise TypeError(f"unsupported residual type {type(residual).__name__}")


def evaluate_instance(ops: Ops, ident: Identity, values: Sequence) -> ResidualReport:
    """Evaluate one instance; it passes when every component vanishes on its own window."""
    kw = dict(zip(ident.params, values))
    comps = flatten(ident.evaluate(ops, **kw))
    window = min(s.valid_t for _, s in comps)
    witness, note = None, ""
    for label, s in comps:
        w = s.first_nonzero(s.valid_t)
        if w is not None:
            witness, note = w, label
            break
    return ResidualReport(
        name=ident.name,
        params=display_params(ident, values),
        checked_valid_t=window,
        passed=witness is None,
        witness=witness,
        anchor=ident.description,
        note=note,
    )


def check_identity(c: Calculus, name: str, **params: Any) -> ResidualReport:
    """One instance by name; basis parameters are 0-based."""
    ident = get_identity(name)
    values = tuple(params[p] for p in ident.params)
    if ident.uses_f1(params) and not c.has_f1:
        raise MissingGenusOne(f"{name} needs a genus-1 potential")
    return evaluate_instance(Ops(c), ident, values)


@dataclass
class SuiteResult:
    suite: str
    model: str
    reports: list[ResidualReport] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def failures(self) -> list[ResidualReport]:
        return [r for r in self.reports if not r.passed]

    def by_identity(self) -> dict[str, list[ResidualReport]]:
        out: dict[str, list[ResidualReport]] = {}
        for r in self.reports:
            out.setdefault(r.name, []).append(r)
        return out


def _run_one(c: Calculus, ident: Identity, k_max: int, policy: str) -> tuple[list[ResidualReport], bool]:
    ops = Ops(c)
    reports, skipped = [], False
    for values in parameter_tuples(ident, c.N, k_max, policy):
        if ident.uses_f1(dict(zip(ident.params, values))) and not c.has_f1:
            skipped = True
            continue
        reports.append(evaluate_instance(ops, ident, values))
    return reports, skipped


_WORKER: dict[str, Calculus] = {}


def _init_worker(model: FrobeniusModel) -> None:
    _WORKER["c"] = Calculus(model)


def _work(name: str, k_max: int, policy: str) -> tuple[list[ResidualReport], bool]:
    return _run_one(_WORKER["c"], REGISTRY[name], k_max, policy)


def run_suite(c: Calculus, suite: str = "all", k_max: int = 3, policy: str = "all", jobs: int = 1,
              names: Iterable[str] | None = None) -> SuiteResult:
    """Run every identity of ``suite`` (or the named subset); report order is deterministic."""
    idents = identities_in(suite)
    if names is not None:
        wanted = set(names)
        unknown = wanted - set(REGISTRY)
        if unknown:
            raise KeyError(f"unknown identities: {sorted(unknown)}")
        idents = [i for i in idents if i.name in wanted]
    t0 = time.perf_counter()
    result = SuiteResult(suite, c.model.name)
    if jobs > 1 and len(idents) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(c.model,)) as pool:
            futures = [pool.submit(_work, i.name, k_max, policy) for i in idents]
            outcomes = [f.result() for f in futures]
    else:
        outcomes = []
        for i in idents:
            log.debug("running %s", i.name)
            outcomes.append(_run_one(c, i, k_max, policy))
    for ident, (reports, skipped) in zip(idents, outcomes):
        result.reports.extend(reports)
        if skipped:
            result.skipped.append(ident.name)
    result.elapsed = time.perf_counter() - t0
    return result
