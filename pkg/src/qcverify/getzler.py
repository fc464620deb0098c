"""Getzler's genus-one relation and the semisimplicity matrix."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from gmpy2 import mpq

from .calculus import Calculus, VectorField
from .linalg import determinant
from .report import ResidualReport, make_report
from .series import Rational, TruncatedSeries

__all__ = ["g0", "g1", "getzler", "getzler_residual", "SemisimplicityMatrix", "semisimplicity_matrix"]

_S4 = tuple(permutations(range(4)))


def g0(c: Calculus, v1: VectorField, v2: VectorField, v3: VectorField, v4: VectorField) -> TruncatedSeries:
    """Genus-0 part of the relation: a literal 24-term symmetrisation."""
    vs = (v1, v2, v3, v4)
    n = c.N
    parts = []
    for h in _S4:
        a1, a2, a3, a4 = (vs[i] for i in h)
        for al in range(n):
            ga, gu = c.basis(al), c.dual(al)
            for be in range(n):
                gb, gbu = c.basis(be), c.dual(be)
                parts.append((c.corr0(a1, a2, a3, gu) * c.corr0(ga, a4, gb, gbu)).scale(mpq(1, 6)))
                parts.append((c.corr0(a1, a2, a3, a4, gu) * c.corr0(ga, gb, gbu)).scale(mpq(1, 24)))
                parts.append((c.corr0(a1, a2, gu, gbu) * c.corr0(ga, gb, a3, a4)).scale(mpq(-1, 4)))
    return c.total(parts)


def g1(c: Calculus, v1: VectorField, v2: VectorField, v3: VectorField, v4: VectorField) -> TruncatedSeries:
    """Genus-1 part of the relation; linear in F1."""
    vs = (v1, v2, v3, v4)
    P = c.product
    parts = []
    for h in _S4:
        a1, a2, a3, a4 = (vs[i] for i in h)
        parts.append(c.corr1(P(a1, a2), P(a3, a4)).scale(3))
        parts.append(c.corr1(c.prod(a1, a2, a3), a4).scale(-4))
        for al in range(c.N):
            ga, gu = c.basis(al), c.dual(al)
            parts.append(-(c.corr0(P(a1, a2), a3, a4, gu) * c.corr1(ga)))
            parts.append((c.corr0(a1, a2, a3, gu) * c.corr1(P(ga, a4))).scale(2))
    return c.total(parts)


def getzler(c: Calculus, v1: VectorField, v2: VectorField, v3: VectorField, v4: VectorField) -> TruncatedSeries:
    return g0(c, v1, v2, v3, v4) + g1(c, v1, v2, v3, v4)


def getzler_residual(c: Calculus, v1: VectorField, v2: VectorField, v3: VectorField, v4: VectorField,
                     params: tuple = ()) -> ResidualReport:
    return make_report("getzler_full", params, getzler(c, v1, v2, v3, v4), anchor="genus-one tautological relation")


@dataclass(frozen=True)
class SemisimplicityMatrix:
    matrix: tuple[tuple[Rational, ...], ...]
    determinant: Rational
    d_max: int

    @property
    def symmetric(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[a][b] == self.matrix[b][a] for a in range(n) for b in range(n))

    @property
    def invertible(self) -> bool:
        return self.determinant != 0


def semisimplicity_matrix(c: Calculus) -> SemisimplicityMatrix:
    """A_ab = sum_{s,m} <<g_a g^s g^m>> <<g_s g_m g_b>> at t = 0, q = 1."""
    n = c.N
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            s = c.total(
                c.corr0(c.basis(a), c.dual(si), c.dual(mu)) * c.corr0(c.basis(si), c.basis(mu), c.basis(b))
                for si in range(n)
                for mu in range(n)
            )
            row.append(s.at_origin())
        rows.append(tuple(row))
    return SemisimplicityMatrix(tuple(rows), determinant(rows), c.space.trunc_q)
