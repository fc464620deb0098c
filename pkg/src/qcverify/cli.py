"""Command line for checking identities on a model and solving for its F1.

Exit codes: 0 when everything passes, 1 on an identity failure or solver
disagreement, 2 on usage or load errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
import warnings
from pathlib import Path
from typing import Sequence

from rich.console import Console
from rich.table import Table

from .calculus import Calculus
from .identities import run_suite
from .model import FrobeniusModel, ModelError, dump_model, save_model
from .models import BUILTINS, kontsevich_n, novikov_invariants, resolve_model
from .phi import phi
from .registry import SUITES
from .report import render_table, reports_to_json
from .series import Monomial, ShapeError, TruncatedSeries, format_rational
from .solver import (
    SolveReport,
    SolverError,
    elliptic_invariants,
    required_trunc,
    solve_f1_getzler,
    solve_f1_l1,
)

log = logging.getLogger("qcverify")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- helpers -----------------------------------------------------------------

_FACTOR = re.compile(r"^(q|t)(\d*)(?:\^(\d+))?$")


def parse_monomial(text: str, n_t: int, n_q: int) -> Monomial:
    """``q``, ``q^2*t3^3``, ``q2*t1`` ... into exponent vectors (1-based names)."""
    t, q = [0] * n_t, [0] * n_q
    for factor in filter(None, (f.strip() for f in text.split("*"))):
        m = _FACTOR.match(factor)
        if not m:
            raise UsageError(f"cannot parse monomial factor {factor!r}")
        kind, idx, exp = m.group(1), m.group(2), int(m.group(3) or 1)
        if kind == "q":
            i = int(idx) - 1 if idx else 0
            if not 0 <= i < n_q:
                raise UsageError(f"{factor!r}: model has {n_q} Novikov variable(s)")
            q[i] += exp
        else:
            if not idx:
                raise UsageError(f"{factor!r}: t needs an index")
            i = int(idx) - 1
            if not 0 <= i < n_t:
                raise UsageError(f"{factor!r}: model has {n_t} coordinates")
            t[i] += exp
    return Monomial(tuple(t), tuple(q))


def _load(ref: str, args: argparse.Namespace, **over: int | None) -> FrobeniusModel:
    trunc_t = over.get("trunc_t", getattr(args, "t_degree", None))
    d_max = over.get("d_max", getattr(args, "novikov", None))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore" if over else "default")
            return resolve_model(ref, trunc_t, d_max)
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot load {ref}: {exc}") from exc


def _solve(model: FrobeniusModel, ref: str, args: argparse.Namespace, method: str) -> tuple[SolveReport, FrobeniusModel]:
    """Solve F1; builtins are regenerated at the truncation the method needs unless --t-degree is given."""
    fn = solve_f1_getzler if method == "getzler" else solve_f1_l1
    work = model
    if ref.startswith("builtin:") and getattr(args, "t_degree", None) is None:
        need = required_trunc(model, method)
        if need > model.trunc_t:
            log.info("regenerating %s at trunc_t=%d for the %s solve", ref, need, method)
            work = _load(ref, args, trunc_t=need, d_max=model.trunc_q)
    return fn(work), work


def _complete_f1(model: FrobeniusModel, ref: str, args: argparse.Namespace) -> FrobeniusModel:
    if model.F1 is not None:
        return model
    report, _ = _solve(model, ref, args, "l1")
    if not report.determined or report.f1 is None:
        raise UsageError(f"{ref} has no F1 and the solver left {len(report.free_slots)} slot(s) free")
    log.info("F1 filled in by the solver: %s", report.f1.to_str(6))
    return model.with_f1(report.f1.to_space(model.space))


def _mutate(model: FrobeniusModel, slot: str) -> FrobeniusModel:
    sp = model.space
    mono = parse_monomial(slot, sp.n_t, sp.n_q)
    if mono.t and mono.t[0]:
        raise UsageError("F1 cannot depend on t1")
    if not sp.fits(mono.t, mono.q):
        raise UsageError(f"{slot} lies outside the model's truncation")
    assert model.F1 is not None
    return model.with_f1(model.F1 + sp.monomial(mono.t, mono.q))


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


# -- commands ----------------------------------------------------------------

def cmd_gen(args: argparse.Namespace, console: Console) -> int:
    model = _load(f"builtin:{args.name}", args)
    text = json.dumps(dump_model(model), indent=1)
    if args.output:
        _write(args.output, text)
        console.print(f"wrote {args.name} (trunc_t={model.trunc_t}, d_max={model.trunc_q}) to {args.output}")
    else:
        print(text)
    return EXIT_OK


def cmd_check(args: argparse.Namespace, console: Console) -> int:
    model = _complete_f1(_load(args.model, args), args.model, args)
    if args.mutate_f1:
        model = _mutate(model, args.mutate_f1)
    result = run_suite(Calculus(model), args.suite, k_max=args.k_max, policy=args.tuples, jobs=args.jobs)
    if args.report == "json":
        text = reports_to_json(result.reports, model=model.name, suite=args.suite,
                               skipped=result.skipped, elapsed=round(result.elapsed, 3))
        if args.output:
            _write(args.output, text)
        else:
            print(text)
    else:
        render_table(result.reports, console, failures_only=args.failures_only,
                     title=f"{model.name}: {args.suite}")
        if result.skipped:
            console.print(f"skipped (no F1): {', '.join(result.skipped)}")
        if args.output:
            _write(args.output, reports_to_json(result.reports, model=model.name, suite=args.suite))
    return EXIT_OK if result.passed else EXIT_FAIL


def _solve_table(report: SolveReport, console: Console) -> None:
    table = Table(title=f"{report.model}: F1 by {report.method} (trunc_t={report.trunc_t}, d_max={report.trunc_q})")
    table.add_column("slot")
    table.add_column("coefficient")
    for s, v in zip(report.slots, report.values):
        table.add_row(str(s), "free" if v is None else format_rational(v))
    console.print(table)
    try:
        inv = elliptic_invariants(report)
    except (SolverError, ModelError):
        inv = []
    if inv:
        etab = Table(title="genus-1 invariants")
        etab.add_column("d")
        etab.add_column("E_d")
        for d, e in inv:
            etab.add_row(str(d), format_rational(e))
        console.print(etab)
    status = "consistent" if report.consistent else "INCONSISTENT"
    console.print(f"rank {report.rank} from {report.n_rows} rows, {status}, "
                  f"{len(report.free_slots)} free slot(s), substitution check: {report.verified}")
    if report.f1 is not None:
        console.print(f"F1 = {report.f1.to_str() if report.f1 else '0'}")


def cmd_solve(args: argparse.Namespace, console: Console) -> int:
    model = _load(args.model, args).with_f1(None)
    methods = ["getzler", "l1"] if args.method == "both" else [args.method]
    reports, work = [], model
    for meth in methods:
        rep, work = _solve(model, args.model, args, meth)
        reports.append(rep)
        if args.report == "table":
            _solve_table(rep, console)
    ok = all(r.determined and r.verified is not False for r in reports)
    agree = True
    if len(reports) == 2:
        a, b = (r.f1 for r in reports)
        agree = a is not None and b is not None and a.to_space(model.space).same_terms(b.to_space(model.space))
        if args.report == "table":
            console.print("agreement OK" if agree else "agreement FAILED")
    if args.report == "json":
        doc = {"reports": [r.to_dict() for r in reports], "agree": agree, "passed": ok and agree}
        print(json.dumps(doc, indent=1))
    if args.output and reports[-1].f1 is not None:
        save_model(work.with_f1(reports[-1].f1), args.output)
        if args.report == "table":
            console.print(f"solved model written to {args.output}")
    return EXIT_OK if ok and agree else EXIT_FAIL


def cmd_phi(args: argparse.Namespace, console: Console) -> int:
    model = _load(args.model, args)
    value: TruncatedSeries = phi(Calculus(model), args.k).value
    text = value.to_str() if value else "0"
    if args.report == "json":
        print(json.dumps({"model": model.name, "k": args.k, "phi": text, "valid_t": value.valid_t}))
    else:
        console.print(f"Phi_{args.k} = {text}  (exact through t-degree {value.valid_t})")
    return EXIT_OK


def cmd_invariants(args: argparse.Namespace, console: Console) -> int:
    max_d = args.max_d
    if args.genus == 0:
        model = _load(args.model, args, d_max=max_d,
                      trunc_t=args.t_degree if args.t_degree is not None else max(8, 3 * max_d))
        rows = [(d, v) for d, v in novikov_invariants(model.F0) if d <= max_d]
        check = {d: kontsevich_n(d) for d in range(1, max_d + 1)} if model.name == "p2" else {}
        if any(check[d] != v for d, v in rows if d in check):
            console.print("[red]F0 coefficients disagree with the Kontsevich recursion[/red]")
            return EXIT_FAIL
    else:
        model = _load(args.model, args, d_max=max_d, trunc_t=args.t_degree).with_f1(None)
        report, _ = _solve(model, args.model, args, "l1")
        rows = elliptic_invariants(report)
    if args.report == "json":
        print(json.dumps({"model": model.name, "genus": args.genus,
                          "invariants": [[d, format_rational(v)] for d, v in rows]}))
    else:
        table = Table(title=f"{model.name}: genus-{args.genus} invariants")
        table.add_column("d")
        table.add_column("N_d" if args.genus == 0 else "E_d")
        for d, v in rows:
            table.add_row(str(d), format_rational(v))
        console.print(table)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcverify", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, model: bool = True) -> None:
        if model:
            sp.add_argument("model", help="builtin:NAME or a model file")
        sp.add_argument("--t-degree", type=int, default=None, help="t-truncation (default 8)")
        sp.add_argument("--novikov", "--max-q", dest="novikov", type=int, default=None,
                        help="Novikov truncation d_max (default 3)")
        sp.add_argument("--report", choices=("table", "json"), default="table")
        sp.add_argument("-o", "--output", default=None, help="output file")

    g = sub.add_parser("gen", help="write a builtin model file")
    g.add_argument("name", choices=BUILTINS)
    common(g, model=False)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="run an identity suite")
    common(c)
    c.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    c.add_argument("--k-max", type=int, default=3)
    c.add_argument("--tuples", choices=("all", "sampled"), default="all",
                   help="sampled keeps one ordering of symmetric basis tuples")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--mutate-f1", nargs="?", const="q", default=None, metavar="SLOT",
                   help="add +1 times SLOT (default q) to F1")
    c.add_argument("--failures-only", action="store_true")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", help="reconstruct F1 from genus-0 data")
    common(s)
    s.add_argument("--method", choices=("getzler", "l1", "both"), default="both")
    s.set_defaults(func=cmd_solve)

    f = sub.add_parser("phi", help="print Phi_k")
    common(f)
    f.add_argument("--k", type=int, required=True)
    f.set_defaults(func=cmd_phi)

    i = sub.add_parser("invariants", help="genus-0 or genus-1 invariant table")
    common(i)
    i.add_argument("--genus", type=int, choices=(0, 1), default=0)
    i.add_argument("--max-d", type=int, default=3)
    i.set_defaults(func=cmd_invariants)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    console = Console()
    try:
        return args.func(args, console)
    except (UsageError, ModelError, ShapeError, SolverError, KeyError) as exc:
        Console(stderr=True).print(f"[red]error:[/red] {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
