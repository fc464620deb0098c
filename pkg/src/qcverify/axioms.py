"""Model axioms, registered as identities of the "axioms" suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

from gmpy2 import mpq

from .calculus import Calculus
from .model import FrobeniusModel
from .registry import Ops, register
from .report import ResidualReport
from .series import TruncatedSeries

__all__ = ["AxiomReport", "validate_axioms", "borisov_residual", "classical_quadratic"]


@register("string_0_metric", "axioms", ("alpha", "beta"), symmetric=True,
          description="<<gamma_1 gamma_a gamma_b>>_0 = eta_ab")
def string_0_metric(o: Ops, alpha, beta):
    return o.C0(o.g(0), o.g(alpha), o.g(beta)) - o.c.const(o.c.eta[alpha][beta])


@register("string_0_higher", "axioms", ("alpha", "beta", "sigma", "mu"), symmetric=True,
          description="<<gamma_1 ...>>_0 vanishes with three or four further insertions")
def string_0_higher(o: Ops, alpha, beta, sigma, mu):
    one, a, b, s, m = o.g(0), o.g(alpha), o.g(beta), o.g(sigma), o.g(mu)
    return [o.C0(one, a, b, s), o.C0(one, a, b, s, m)]


@register("string_1", "axioms", ("alpha", "beta"), symmetric=True, needs_f1=True,
          description="<<gamma_1 ...>>_1 vanishes with zero, one or two further insertions")
def string_1(o: Ops, alpha, beta):
    one = o.g(0)
    return [o.C1(one), o.C1(one, o.g(alpha)), o.C1(one, o.g(alpha), o.g(beta))]


@register("wdvv", "axioms", ("alpha", "beta", "sigma", "mu"),
          description="<<{v1 o v2} v3 v4>>_0 = <<{v1 o v3} v2 v4>>_0")
def wdvv(o: Ops, alpha, beta, sigma, mu):
    P, C0 = o.P, o.C0
    v1, v2, v3, v4 = o.g(alpha), o.g(beta), o.g(sigma), o.g(mu)
    return C0(P(v1, v2), v3, v4) - C0(P(v1, v3), v2, v4)


@register("wdvv_d1", "axioms", ("alpha", "beta", "sigma", "mu", "nu"),
          description="first derivative of WDVV (5-point)")
def wdvv_d1(o: Ops, alpha, beta, sigma, mu, nu):
    P, C0 = o.P, o.C0
    v1, v2, v3, v4, v5 = (o.g(x) for x in (alpha, beta, sigma, mu, nu))
    rhs = C0(P(v1, v3), v2, v4, v5) + C0(P(v2, v5), v1, v3, v4) - C0(P(v3, v5), v1, v2, v4)
    return C0(P(v1, v2), v3, v4, v5) - rhs


@register("wdvv_d2", "axioms", ("alpha", "beta", "sigma", "mu", "nu", "rho"),
          description="second derivative of WDVV (6-point)")
def wdvv_d2(o: Ops, alpha, beta, sigma, mu, nu, rho):
    P, C0 = o.P, o.C0
    v1, v2, v3, v4, v5, v6 = (o.g(x) for x in (alpha, beta, sigma, mu, nu, rho))

    def split(a, b, c, d, e, f):
        return o.mu(lambda gr, gu: C0(a, b, c, gu) * C0(gr, d, e, f))

    rhs = (split(v1, v3, v6, v2, v4, v5) + split(v1, v3, v5, v2, v4, v6)
           + C0(P(v2, v4), v1, v3, v5, v6) + C0(P(v1, v3), v2, v4, v5, v6)
           - split(v1, v2, v6, v3, v4, v5) - split(v1, v2, v5, v3, v4, v6)
           - C0(P(v3, v4), v1, v2, v5, v6))
    return C0(P(v1, v2), v3, v4, v5, v6) - rhs


def classical_quadratic(c: Calculus) -> TruncatedSeries:
    """(1/2) sum_ab C_ab t^a t^b."""
    sp = c.space
    C = c.model.c1_lower
    terms = [(sp.variable(a) * sp.variable(b)).scale(C[a][b] / 2)
             for a in range(c.N) for b in range(c.N) if C[a][b] != 0]
    return c.total(terms)


def _quasihom(o: Ops, g: int, idx: tuple[int, ...]) -> TruncatedSeries:
    c = o.c
    corr = o.C0 if g == 0 else o.C1
    vs = [o.g(a) for a in idx]
    k = len(vs)
    lhs = corr(o.E(1), *vs)
    if k == 0:
        if g == 0:
            rhs = c.potential(0).scale(3 - c.model.d) + classical_quadratic(c)
        else:
            rhs = c.const(-c.model.c1_cdm1 / 24)
        return lhs - rhs
    rhs = [corr(*vs[:i], o.G(vs[i]), *vs[i + 1:]) for i in range(k)]
    rhs.append(corr(*vs).scale(-(2 * g + k - 2) * (o.b1 + 1)))
    if g == 0:
        rhs.append(reduce(lambda f, a: f.deriv(a), idx, classical_quadratic(c)))
    return lhs - o.sum(rhs)


@register("quasihom_0", "axioms", ("g",), description="<<E>>_g from the grading")
def quasihom_0(o: Ops, g):
    return _quasihom(o, g, ())


@register("quasihom_1", "axioms", ("g", "alpha"), description="<<E v1>>_g from the grading")
def quasihom_1(o: Ops, g, alpha):
    return _quasihom(o, g, (alpha,))


@register("quasihom_2", "axioms", ("g", "alpha", "beta"), symmetric=True,
          description="<<E v1 v2>>_g from the grading")
def quasihom_2(o: Ops, g, alpha, beta):
    return _quasihom(o, g, (alpha, beta))


@register("quasihom_3", "axioms", ("g", "alpha", "beta", "sigma"), symmetric=True,
          description="<<E v1 v2 v3>>_g from the grading")
def quasihom_3(o: Ops, g, alpha, beta, sigma):
    return _quasihom(o, g, (alpha, beta, sigma))


def borisov_residual(m: FrobeniusModel) -> mpq:
    """sum_a b_a(1 - b_a) - (b_1 + 1) chi / 6 + (1/6) int c_1 c_{d-1}."""
    lhs = sum((b * (1 - b) for b in m.b), mpq(0)) - (m.b1 + 1) * m.chi / 6
    return lhs + m.c1_cdm1 / 6


@register("borisov", "axioms", (), description="Borisov's equality on the Hodge grading")
def borisov(o: Ops):
    return o.c.const(borisov_residual(o.c.model))


@dataclass
class AxiomReport:
    """Per-instance axiom results for one model."""

    model: str
    entries: list[ResidualReport] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def by_axiom(self) -> dict[str, bool]:
        out: dict[str, bool] = {}
        for e in self.entries:
            out[e.name] = out.get(e.name, True) and e.passed
        return out

    def failures(self) -> list[ResidualReport]:
        return [e for e in self.entries if not e.passed]


def validate_axioms(m: FrobeniusModel, policy: str = "all") -> AxiomReport:
    """Check every axiom instance; genus-1 checks are skipped when the model has no F1."""
    from .identities import run_suite

    c = Calculus(m)
    result = run_suite(c, "axioms", k_max=3, policy=policy)
    return AxiomReport(m.name, result.reports, result.skipped)
