"""Reconstructing F1 from genus-0 data.

The unknown quantum part of F1 is a linear combination of slot monomials
``t^m q^d`` (no ``t^1``, no divisor variables, Novikov degree >= 1).  Either
the genus-one relation or the condition ``<<E^2>>_1 = Phi_2`` is then a linear
system in the slot coefficients, solved exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from math import factorial, prod
from typing import Any, Callable, Iterable, Sequence

from gmpy2 import mpq

from .calculus import Calculus, VectorField
from .getzler import g0, g1
from .linalg import eliminate
from .model import FrobeniusModel, ModelError, genus1_classical_part
from .phi import phi
from .series import Monomial, Rational, TruncatedSeries

__all__ = [
    "Genus1Ansatz",
    "SolveReport",
    "SolverError",
    "build_ansatz",
    "required_trunc",
    "solve_f1_getzler",
    "solve_f1_l1",
    "elliptic_invariants",
]

log = logging.getLogger(__name__)

# Extra t-degree needed above the highest slot so that its coefficient is visible
# inside the residual window of each system.
MARGIN = {"getzler": 3, "l1": 2}


class SolverError(RuntimeError):
    """Inconsistent system or unusable model."""


@dataclass(frozen=True)
class Genus1Ansatz:
    fixed_part: TruncatedSeries
    slots: tuple[Monomial, ...]

    def series(self, values: Sequence[Rational]) -> TruncatedSeries:
        sp = self.fixed_part.space
        out = self.fixed_part
        for mono, v in zip(self.slots, values):
            if v:
                out = out + sp.monomial(mono.t, mono.q, v)
        return out


def _weights(m: FrobeniusModel) -> list[Rational]:
    """E-weight of each coordinate t^a."""
    return [m.b1 + 1 - b for b in m.b]


def _q_weight(m: FrobeniusModel, q_exp: Sequence[int]) -> Rational:
    return sum((m.euler_const[a] * sum(c * d for c, d in zip(m.charges[a], q_exp)) for a in range(m.N)), mpq(0))


def _q_degrees(m: FrobeniusModel) -> list[tuple[int, ...]]:
    r, top = m.r, m.trunc_q
    return [q for q in product(range(top + 1), repeat=r) if 0 < sum(q) <= top]


def _free_variables(m: FrobeniusModel) -> list[int]:
    divisors = set(m.divisor_directions)
    return [a for a in range(1, m.N) if a not in divisors]


def natural_cap(m: FrobeniusModel) -> int:
    """Largest t-degree a weight-zero slot can have (falls back to trunc_t)."""
    w = _weights(m)
    free = _free_variables(m)
    if not free or any(w[a] >= 0 for a in free):
        return m.trunc_t
    step = min(-w[a] for a in free)
    top = max((_q_weight(m, q) for q in _q_degrees(m)), default=mpq(0))
    return max(0, int(top // step))


def build_ansatz(m: FrobeniusModel, quasi_homogeneous: bool = True, t_cap: int | None = None) -> Genus1Ansatz:
    """Slots within the model's truncation; with ``quasi_homogeneous`` only weight-zero ones."""
    fixed = genus1_classical_part(m)
    cap = m.trunc_t if t_cap is None else min(t_cap, m.trunc_t)
    w = _weights(m)
    free = _free_variables(m)
    slots = []
    for q in _q_degrees(m):
        qw = _q_weight(m, q)
        for deg in range(cap + 1):
            for combo in combinations_with_replacement(free, deg):
                t = [0] * m.N
                for a in combo:
                    t[a] += 1
                if quasi_homogeneous and sum(w[a] * t[a] for a in range(m.N)) + qw != 0:
                    continue
                slots.append(Monomial(tuple(t), tuple(q)))
    slots.sort(key=lambda s: (sum(s.q), s.q, sum(s.t), s.t))
    return Genus1Ansatz(fixed, tuple(slots))


def required_trunc(m: FrobeniusModel, method: str = "getzler") -> int:
    """t-truncation at which every weight-zero slot is visible to ``method``."""
    big = m.with_truncation(trunc_t=max(m.trunc_t, natural_cap(m)))
    ans = build_ansatz(big)
    top = max((s.t_degree for s in ans.slots), default=0)
    return max(3, top + MARGIN[method])


@dataclass
class SolveReport:
    method: str
    model: str
    trunc_t: int
    trunc_q: int
    slots: list[Monomial]
    values: list[Rational | None]
    rank: int
    n_rows: int
    consistent: bool
    free_slots: list[Monomial] = field(default_factory=list)
    f1: TruncatedSeries | None = None
    verified: bool | None = None

    @property
    def determined(self) -> bool:
        return self.consistent and not self.free_slots

    def value_of(self, mono: Monomial) -> Rational | None:
        return self.values[self.slots.index(mono)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "model": self.model,
            "trunc_t": self.trunc_t,
            "trunc_q": self.trunc_q,
            "rank": self.rank,
            "rows": self.n_rows,
            "consistent": self.consistent,
            "slots": [{"monomial": str(s), "value": None if v is None else str(v)}
                      for s, v in zip(self.slots, self.values)],
            "free_slots": [str(s) for s in self.free_slots],
            "f1": None if self.f1 is None else self.f1.to_str(),
            "verified": self.verified,
        }


Builder = Callable[[Calculus], tuple[TruncatedSeries, TruncatedSeries]]


def _rows(base: Calculus, ans: Genus1Ansatz, builders: Iterable[Builder]) -> tuple[list, list]:
    """Rows of ``const + sum_s x_s lin_s = 0`` over each residual's window.

    A builder returns the F1-independent part and the part linear in F1.
    """
    sp = base.space
    fixed_c = base.with_f1(ans.fixed_part)
    slot_c = [base.with_f1(sp.monomial(s.t, s.q)) for s in ans.slots]
    A: list[list[Rational]] = []
    b: list[Rational] = []
    for build in builders:
        indep, lin_fixed = build(fixed_c)
        const = indep + lin_fixed
        lins = [build(c)[1] for c in slot_c]
        window = min([const.valid_t] + [x.valid_t for x in lins])
        keys: set[Monomial] = set()
        for s in [const] + lins:
            keys.update(mono for mono, _ in s.items() if mono.t_degree <= window)
        for mono in sorted(keys):
            row = [x.coefficient(mono.t, mono.q) for x in lins]
            rhs = -const.coefficient(mono.t, mono.q)
            if rhs or any(row):
                A.append(row)
                b.append(rhs)
    return A, b


def _getzler_builder(fields: Callable[[Calculus], tuple[VectorField, ...]]):
    def build(c: Calculus) -> tuple[TruncatedSeries, TruncatedSeries]:
        vs = fields(c)
        return g0(c, *vs), g1(c, *vs)
    return build


def _l1_builder(c: Calculus) -> tuple[TruncatedSeries, TruncatedSeries]:
    return -phi(c, 2).value, c.corr1(c.E(2))


def _finish(method: str, m: FrobeniusModel, ans: Genus1Ansatz, A: list, b: list,
            verify: Callable[[Calculus], bool] | None) -> SolveReport:
    n = len(ans.slots)
    if n == 0:
        consistent = all(v == 0 for v in b)
        res_values: list[Rational | None] = []
        rank, free = 0, []
    else:
        res = eliminate(A, b) if A else None
        consistent = res.consistent if res else True
        rank = res.rank if res else 0
        det = set(res.determined()) if res else set()
        sol = res.solution() if res else [None] * n
        res_values = [sol[i] if i in det else None for i in range(n)]
        free = [ans.slots[i] for i in range(n) if i not in det]
    report = SolveReport(method, m.name, m.trunc_t, m.trunc_q, list(ans.slots), res_values,
                         rank, len(A), consistent, free)
    if consistent and not free:
        report.f1 = ans.series([v if v is not None else mpq(0) for v in res_values])
        if verify is not None:
            report.verified = verify(Calculus(m, report.f1))
    return report


def _prepare(m: FrobeniusModel, ansatz: Genus1Ansatz | None) -> tuple[FrobeniusModel, Genus1Ansatz]:
    m = m.with_f1(None)
    return m, (ansatz if ansatz is not None else build_ansatz(m))


def _verify_getzler(c: Calculus) -> bool:
    from .identities import run_suite

    return run_suite(c, "core", names=["getzler_full"], k_max=0).passed


def solve_f1_getzler(m: FrobeniusModel, ansatz: Genus1Ansatz | None = None, verify: bool = True) -> SolveReport:
    """Impose G0 + G1 = 0.

    Rows come from G(E, E, gamma_a, gamma_b) first; all basis 4-tuples are added
    when those leave slots undetermined.
    """
    m, ans = _prepare(m, ansatz)
    base = Calculus(m)
    N = m.N
    first = [_getzler_builder(lambda c, a=a, b=b: (c.E(1), c.E(1), c.basis(a), c.basis(b)))
             for a in range(N) for b in range(a, N)]
    A, b = _rows(base, ans, first)
    report = _finish("getzler", m, ans, A, b, None)
    if report.free_slots or not report.consistent:
        log.info("Euler rows leave %d slots free; adding all basis 4-tuples", len(report.free_slots))
        more = [_getzler_builder(lambda c, t=t: tuple(c.basis(i) for i in t))
                for t in combinations_with_replacement(range(N), 4)]
        A2, b2 = _rows(base, ans, more)
        A, b = A + A2, b + b2
    return _finish("getzler", m, ans, A, b, _verify_getzler if verify else None)


def solve_f1_l1(m: FrobeniusModel, ansatz: Genus1Ansatz | None = None, verify: bool = True) -> SolveReport:
    """Impose <<E^2>>_1 = Phi_2 coefficientwise."""
    m, ans = _prepare(m, ansatz)
    base = Calculus(m)
    A, b = _rows(base, ans, [_l1_builder])
    return _finish("l1", m, ans, A, b, _verify_getzler if verify else None)


def elliptic_invariants(report: SolveReport) -> list[tuple[int, Rational]]:
    """(d, E_d) over every solved slot, zeros included; E_d is the coefficient times prod(m_a!)."""
    if not report.determined:
        raise SolverError("solve did not determine every slot")
    out: dict[int, Rational] = {}
    for s, v in zip(report.slots, report.values):
        d = s.q_degree
        if d in out:
            raise ModelError(f"several slots of Novikov degree {d}; no single invariant")
        out[d] = v * prod(factorial(e) for e in s.t)  # type: ignore[operator]
    return sorted(out.items())
