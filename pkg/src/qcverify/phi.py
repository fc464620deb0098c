"""The genus-0 functions Phi_k, their first derivatives and the genus-1 gap."""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .calculus import Calculus
from .series import TruncatedSeries

__all__ = [
    "PhiValue",
    "phi",
    "phi_alt",
    "phi_three_sum",
    "dphi_explicit",
    "genus1_gap",
    "gap_string_residual",
    "virasoro_type_phi_residual",
]


@dataclass(frozen=True)
class PhiValue:
    k: int
    value: TruncatedSeries
    formula_used: str  # "phiformula" or "phialternative"


def _memo(c: Calculus, key: tuple, build):
    store = c._g0.__dict__.setdefault("phi", {})
    hit = store.get(key)
    if hit is None:
        hit = build()
        store[key] = hit
    return hit


def _phi1(c: Calculus) -> TruncatedSeries:
    return c.const(-c.model.c1_cdm1 / 24)


def phi_three_sum(c: Calculus, k: int) -> TruncatedSeries:
    """The b-weighted three-sum expression, evaluated for any k >= 0."""
    def build() -> TruncatedSeries:
        n, b, g1 = c.N, c.b, c.basis(0)
        parts = []
        for m in range(k):
            em, er = c.E(m), c.E(k - 1 - m)
            for a in range(n):
                if not b[a]:
                    continue
                left = c.corr0(g1, em, c.dual(a))
                for be in range(n):
                    mid = c.corr0(c.basis(a), er, c.dual(be))
                    trace = c.total(c.corr0(c.basis(be), c.basis(s), c.dual(s)) for s in range(n))
                    parts.append((left * mid * trace).scale(-b[a] / 24))
            for a in range(n):
                for be in range(n):
                    w = b[a] * b[be]
                    if not w:
                        continue
                    x = c.corr0(c.basis(a), em, c.dual(be)) * c.corr0(c.basis(be), er, c.dual(a))
                    parts.append(x.scale(-w / 4))
        if k >= 1:
            ek = c.E(k - 1)
            for s in range(n):
                parts.append(c.corr0(c.basis(s), ek, c.dual(s)).scale(mpq(k, 12)))
        return c.total(parts)

    return _memo(c, ("three", k), build)


def phi(c: Calculus, k: int) -> PhiValue:
    """Phi_k; closed constants for k = 0, 1 and the three-sum formula above."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return PhiValue(0, c.space.zero(), "phiformula")
    if k == 1:
        return PhiValue(1, _phi1(c), "phiformula")
    return PhiValue(k, phi_three_sum(c, k), "phiformula")


def phi_alt(c: Calculus, k: int) -> PhiValue:
    """Phi_k from the Delta-based expression (k >= 2)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k < 2:
        return PhiValue(k, phi(c, k).value, "phialternative")

    def build() -> TruncatedSeries:
        delta = c.delta()
        parts = []
        for i in range(k):
            parts.append(-c.corr0(c.G(c.E(i)), delta, c.E(k - i - 1)))
        for gm, gu in c.pairs():
            parts.append(c.corr0(c.E(k - 1), gm, gu).scale(-k))
        for i in range(k):
            for gm, gu in c.pairs():
                parts.append(c.corr0(c.G(c.product(c.E(i), gu)), c.G(gm), c.E(k - i - 1)).scale(6))
        return c.total(parts).scale(mpq(1, 24))

    return PhiValue(k, _memo(c, ("alt", k), build), "phialternative")


def phi_value(c: Calculus, k: int) -> TruncatedSeries:
    """Phi_k as a series; negative k gives 0 (such terms always carry a zero weight)."""
    if k < 0:
        return c.space.zero()
    return phi(c, k).value


def dphi_explicit(c: Calculus, alpha: int, k: int) -> TruncatedSeries:
    """gamma_alpha Phi_k from the seven-term closed form (0-based alpha)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k <= 1:
        return c.space.zero()
    E, G, P = c.E, c.G, c.prod
    ga = c.basis(alpha)
    delta = c.delta()
    parts: list[TruncatedSeries] = []
    for i in range(1, k):
        for gm, gu in c.pairs():
            parts.append(-c.corr0(G(E(i)), P(E(k - i - 1), ga), gm, gu))
    for i in range(0, k - 1):
        parts.append(c.corr0(P(G(E(i)), E(k - i - 2)), delta, ga).scale(-(k - i - 1)))
    for i in range(0, k - 1):
        parts.append(c.corr0(G(P(delta, E(k - i - 2))), E(i), ga).scale(-k + 2 * i + 2))
    for i in range(1, k):
        for j in range(1, i + 1):
            parts.append(-c.corr0(G(P(E(k - i - 1), delta)), G(P(E(i - j), ga)), E(j - 1)))
    for i in range(1, k):
        for j in range(1, i + 1):
            parts.append(-c.corr0(P(G(E(k - i - 1)), delta), G(P(E(i - j), ga)), E(j - 1)))
    for i in range(1, k):
        for gm, gu in c.pairs():
            parts.append(c.corr0(P(G(P(E(k - i - 1), gu)), G(gm)), E(i - 1), ga).scale(12 * i))
    parts.append(c.corr0(delta, E(k - 2), ga).scale(-k * (k - 1)))
    return c.total(parts).scale(mpq(1, 24))


def genus1_gap(c: Calculus, k: int) -> TruncatedSeries:
    """<<E^k>>_1 - Phi_k."""
    if k < 0:
        return c.space.zero()
    return c.corr1(c.E(k)) - phi(c, k).value


def gap_string_residual(c: Calculus, k: int) -> TruncatedSeries:
    """gamma_1 (gap_k) - k gap_{k-1}."""
    return c.directional(c.basis(0), genus1_gap(c, k)) - genus1_gap(c, k - 1).scale(k)


def virasoro_type_phi_residual(c: Calculus, k: int, m: int) -> TruncatedSeries:
    """E^k Phi_m - E^m Phi_k - (m - k) Phi_{k+m-1}."""
    lhs = c.directional(c.E(k), phi_value(c, m)) - c.directional(c.E(m), phi_value(c, k))
    return lhs - phi_value(c, k + m - 1).scale(m - k)
